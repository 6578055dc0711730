#include "maxent/losses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "maxent/kernels.hpp"
#include "maxent/random.hpp"

namespace maxent {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kModeTol = 1e-9;

void require_size(const Act& act, std::size_t n, const std::string& who) {
  if (act.payload.size() != n)
    throw Error(ErrorCode::InvalidAct, who + ": act has " + std::to_string(act.payload.size()) +
                                           " entries, expected " + std::to_string(n));
}

void require_kind(const Act& act, ActKind kind, const std::string& who) {
  if (act.kind != kind)
    throw Error(ErrorCode::InvalidAct,
                who + ": act kind " + std::string(to_string(act.kind)) + " is not " +
                    std::string(to_string(kind)));
}

void require_probability(const Act& act, const std::string& who) {
  double total = 0.0;
  for (double v : act.payload) {
    if (!std::isfinite(v) || v < -kClampTol)
      throw Error(ErrorCode::InvalidAct, who + ": act entries must be nonnegative");
    total += v;
  }
  if (std::abs(total - 1.0) > kNormTol)
    throw Error(ErrorCode::InvalidAct, who + ": act entries must sum to 1");
}

void require_density(const Act& act, const BaseMeasure& mu, const std::string& who) {
  double total = 0.0;
  for (std::size_t i = 0; i < act.payload.size(); ++i) {
    const double v = act.payload[i];
    if (!std::isfinite(v) || v < -kClampTol)
      throw Error(ErrorCode::InvalidAct, who + ": density entries must be nonnegative");
    total += v * mu[i];
  }
  if (std::abs(total - 1.0) > kNormTol)
    throw Error(ErrorCode::InvalidAct, who + ": density must integrate to 1 against mu");
}

std::vector<double> density_of(const Distribution& p, const BaseMeasure& mu) {
  std::vector<double> q(p.size());
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = p[i] / mu[i];
  return q;
}

Distribution distribution_of(const std::vector<double>& q, const BaseMeasure& mu) {
  std::vector<double> w(q.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::max(q[i], 0.0) * mu[i];
  return renormalized(w);
}

void check_space(const SampleSpace& space, const BaseMeasure& mu) {
  if (space.size() != mu.size())
    throw Error(ErrorCode::DimensionMismatch, "base measure size differs from sample space");
}

class BrierModel final : public LossModel {
 public:
  explicit BrierModel(std::size_t n) : n_(n) {}

  std::string name() const override { return "brier"; }
  LossFamily family() const override { return LossFamily::Brier; }
  ActKind act_kind() const override { return ActKind::Probability; }
  Strictness strictness() const override { return Strictness::Strict; }
  std::size_t outcomes() const override { return n_; }

  void validate_act(const Act& act) const override {
    require_kind(act, ActKind::Probability, name());
    require_size(act, n_, name());
    require_probability(act, name());
  }

  ExtReal loss(std::size_t x, const Act& act) const override {
    const auto& q = act.payload;
    return kernels::dot(q, q) - 2.0 * q[x] + 1.0;
  }

  std::vector<ExtReal> loss_vector(const Act& act) const override {
    const auto& q = act.payload;
    const double sq = kernels::dot(q, q);
    std::vector<ExtReal> out(n_);
    for (std::size_t x = 0; x < n_; ++x) out[x] = sq - 2.0 * q[x] + 1.0;
    return out;
  }

  BayesResult bayes_act(const Distribution& p) const override {
    return {Act{ActKind::Probability, p.vec()}, 1.0 - kernels::dot(p.weights(), p.weights())};
  }

  bool distribution_acts() const override { return true; }
  std::optional<Distribution> quoted_distribution(const Act& act) const override {
    return renormalized(act.payload);
  }
  std::optional<Act> neutral_act() const override {
    return Act{ActKind::Probability, Distribution::uniform(n_).vec()};
  }

 private:
  std::size_t n_;
};

class LogModel final : public LossModel {
 public:
  explicit LogModel(BaseMeasure mu) : mu_(std::move(mu)) {}

  std::string name() const override { return "log"; }
  LossFamily family() const override { return LossFamily::Log; }
  ActKind act_kind() const override { return ActKind::Density; }
  Strictness strictness() const override { return Strictness::Strict; }
  std::size_t outcomes() const override { return mu_.size(); }
  const BaseMeasure& mu() const { return mu_; }

  void validate_act(const Act& act) const override {
    require_kind(act, ActKind::Density, name());
    require_size(act, mu_.size(), name());
    require_density(act, mu_, name());
  }

  ExtReal loss(std::size_t x, const Act& act) const override {
    const double q = act.payload[x];
    if (q <= 0.0) return ExtReal::infinity();
    return -std::log(q);
  }

  BayesResult bayes_act(const Distribution& p) const override {
    double h = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p[i] > 0.0) h -= p[i] * std::log(p[i] / mu_[i]);
    return {Act{ActKind::Density, density_of(p, mu_)}, h};
  }

  bool distribution_acts() const override { return true; }
  std::optional<Distribution> quoted_distribution(const Act& act) const override {
    return distribution_of(act.payload, mu_);
  }
  std::optional<Act> neutral_act() const override {
    return Act{ActKind::Density, std::vector<double>(mu_.size(), 1.0 / mu_.total())};
  }

 private:
  BaseMeasure mu_;
};

class ZeroOneModel final : public LossModel {
 public:
  explicit ZeroOneModel(std::size_t n) : n_(n) {}

  std::string name() const override { return "zero_one"; }
  LossFamily family() const override { return LossFamily::ZeroOne; }
  ActKind act_kind() const override { return ActKind::Randomized; }
  Strictness strictness() const override { return Strictness::None; }
  std::size_t outcomes() const override { return n_; }

  void validate_act(const Act& act) const override {
    require_kind(act, ActKind::Randomized, name());
    require_size(act, n_, name());
    require_probability(act, name());
  }

  ExtReal loss(std::size_t x, const Act& act) const override { return 1.0 - act.payload[x]; }

  std::vector<std::size_t> bayes_act_support(const Distribution& p) const override {
    const double pmax = *std::max_element(p.vec().begin(), p.vec().end());
    std::vector<std::size_t> modes;
    for (std::size_t i = 0; i < n_; ++i)
      if (p[i] >= pmax - kModeTol) modes.push_back(i);
    return modes;
  }

  BayesResult bayes_act(const Distribution& p) const override {
    const auto modes = bayes_act_support(p);
    std::vector<double> zeta(n_, 0.0);
    for (std::size_t i : modes) zeta[i] = 1.0 / static_cast<double>(modes.size());
    const double pmax = *std::max_element(p.vec().begin(), p.vec().end());
    return {Act{ActKind::Randomized, std::move(zeta)}, 1.0 - pmax};
  }

  std::optional<std::vector<std::vector<double>>> finite_act_losses() const override {
    std::vector<std::vector<double>> m(n_, std::vector<double>(n_, 1.0));
    for (std::size_t i = 0; i < n_; ++i) m[i][i] = 0.0;
    return m;
  }

  Act mix_pure_acts(std::span<const double> weights) const override {
    if (weights.size() != n_) throw Error(ErrorCode::DimensionMismatch, "pure act weights");
    return Act{ActKind::Randomized, std::vector<double>(weights.begin(), weights.end())};
  }

  std::optional<Act> neutral_act() const override {
    return Act{ActKind::Randomized, Distribution::uniform(n_).vec()};
  }

 private:
  std::size_t n_;
};

class QuadraticModel final : public LossModel {
 public:
  explicit QuadraticModel(std::vector<double> values) : v_(std::move(values)) {}

  std::string name() const override { return "quadratic"; }
  LossFamily family() const override { return LossFamily::Quadratic; }
  ActKind act_kind() const override { return ActKind::Scalar; }
  Strictness strictness() const override { return Strictness::Strict; }
  std::size_t outcomes() const override { return v_.size(); }

  void validate_act(const Act& act) const override {
    require_kind(act, ActKind::Scalar, name());
    require_size(act, 1, name());
    if (!std::isfinite(act.payload[0])) throw Error(ErrorCode::InvalidAct, "non-finite estimate");
  }

  ExtReal loss(std::size_t x, const Act& act) const override {
    const double d = v_[x] - act.payload[0];
    return d * d;
  }

  BayesResult bayes_act(const Distribution& p) const override {
    const double mean = kernels::dot(p.weights(), v_);
    double var = 0.0;
    for (std::size_t i = 0; i < v_.size(); ++i) var += p[i] * (v_[i] - mean) * (v_[i] - mean);
    return {Act{ActKind::Scalar, {mean}}, var};
  }

 private:
  std::vector<double> v_;
};

class BregmanModel final : public LossModel {
 public:
  BregmanModel(BaseMeasure mu, ConvexGenerator gen) : mu_(std::move(mu)), gen_(std::move(gen)) {}

  std::string name() const override { return "bregman(" + gen_.name + ")"; }
  LossFamily family() const override { return LossFamily::Bregman; }
  ActKind act_kind() const override { return ActKind::Density; }
  Strictness strictness() const override {
    return gen_.strictly_convex ? Strictness::Strict : Strictness::None;
  }
  std::size_t outcomes() const override { return mu_.size(); }
  const BaseMeasure& mu() const { return mu_; }
  const ConvexGenerator& generator() const { return gen_; }

  void validate_act(const Act& act) const override {
    require_kind(act, ActKind::Density, name());
    require_size(act, mu_.size(), name());
    require_density(act, mu_, name());
  }

  ExtReal loss(std::size_t x, const Act& act) const override {
    return pointwise(act.payload[x]) - offset(act.payload);
  }

  std::vector<ExtReal> loss_vector(const Act& act) const override {
    const double c = offset(act.payload);
    std::vector<ExtReal> out(mu_.size());
    for (std::size_t x = 0; x < out.size(); ++x) out[x] = pointwise(act.payload[x]) - c;
    return out;
  }

  BayesResult bayes_act(const Distribution& p) const override {
    auto q = density_of(p, mu_);
    double h = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) h -= gen_.psi(q[i]) * mu_[i];
    return {Act{ActKind::Density, std::move(q)}, h};
  }

  bool distribution_acts() const override { return true; }
  std::optional<Distribution> quoted_distribution(const Act& act) const override {
    return distribution_of(act.payload, mu_);
  }
  std::optional<Act> neutral_act() const override {
    return Act{ActKind::Density, std::vector<double>(mu_.size(), 1.0 / mu_.total())};
  }

  double divergence(const std::vector<double>& p, const std::vector<double>& q) const {
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double a = p[i];
      const double b = q[i];
      if (a == b) continue;
      const double slope = gen_.psi_prime(b);
      if (std::isinf(slope)) return kInf;
      d += (gen_.psi(a) - gen_.psi(b) - slope * (a - b)) * mu_[i];
    }
    return d;
  }

 private:
  // -psi'(q(x)), which is +inf when psi'(0) = -inf.
  ExtReal pointwise(double qx) const {
    const double slope = gen_.psi_prime(qx);
    if (std::isinf(slope) && slope < 0) return ExtReal::infinity();
    return -slope;
  }

  // sum_t [psi(q(t)) - q(t) psi'(q(t))] mu(t), with 0 * psi'(0) = 0.
  double offset(const std::vector<double>& q) const {
    double c = 0.0;
    for (std::size_t t = 0; t < q.size(); ++t) {
      double term = gen_.psi(q[t]);
      if (q[t] != 0.0) term -= q[t] * gen_.psi_prime(q[t]);
      c += term * mu_[t];
    }
    return c;
  }

  BaseMeasure mu_;
  ConvexGenerator gen_;
};

}  // namespace

std::vector<ExtReal> LossModel::loss_vector(const Act& act) const {
  std::vector<ExtReal> out(outcomes());
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = loss(x, act);
  return out;
}

ConvexGenerator ConvexGenerator::entropy() {
  return {"s_log_s", [](double s) { return s > 0.0 ? s * std::log(s) : 0.0; },
          [](double s) { return s > 0.0 ? std::log(s) + 1.0 : -kInf; }, true};
}

ConvexGenerator ConvexGenerator::square(double offset) {
  return {"square", [offset](double s) { return s * s + offset; },
          [](double s) { return 2.0 * s; }, true};
}

ConvexGenerator ConvexGenerator::power(double exponent) {
  if (!(exponent > 1.0) || !std::isfinite(exponent))
    throw Error(ErrorCode::InvalidGenerator, "power generator needs exponent > 1");
  const double a = exponent;
  return {"power", [a](double s) { return (std::pow(s, a) - s) / (a - 1.0); },
          [a](double s) { return (a * std::pow(s, a - 1.0) - 1.0) / (a - 1.0); }, true};
}

void check_generator(const ConvexGenerator& gen) {
  if (!gen.psi || !gen.psi_prime)
    throw Error(ErrorCode::InvalidGenerator, gen.name + ": missing psi or psi_prime");
  constexpr int kGrid = 1000;
  constexpr double kTop = 2.0;
  const double step = kTop / kGrid;
  std::vector<double> vals(kGrid + 1);
  for (int i = 0; i <= kGrid; ++i) {
    vals[i] = gen.psi(i * step);
    if (!std::isfinite(vals[i]))
      throw Error(ErrorCode::InvalidGenerator, gen.name + ": psi not finite on [0, 2]");
  }
  for (int i = 1; i < kGrid; ++i) {
    const double second = vals[i - 1] - 2.0 * vals[i] + vals[i + 1];
    if (second < -1e-8)
      throw Error(ErrorCode::InvalidGenerator,
                  gen.name + ": psi not convex near s = " + std::to_string(i * step));
  }
  constexpr double h = 1e-6;
  for (int i = 1; i < kGrid; ++i) {
    const double s = static_cast<double>(i) / kGrid;
    const double fd = (gen.psi(s + h) - gen.psi(s - h)) / (2.0 * h);
    const double d = gen.psi_prime(s);
    if (!(std::abs(fd - d) <= 1e-6 * std::max(1.0, std::abs(d))))
      throw Error(ErrorCode::InvalidGenerator,
                  gen.name + ": psi_prime disagrees with psi near s = " + std::to_string(s));
  }
}

LossModelPtr brier_model(const SampleSpace& space) {
  return std::make_shared<BrierModel>(space.size());
}

LossModelPtr log_model(const SampleSpace& space, const BaseMeasure& mu) {
  check_space(space, mu);
  return std::make_shared<LogModel>(mu);
}

LossModelPtr zero_one_model(const SampleSpace& space) {
  return std::make_shared<ZeroOneModel>(space.size());
}

LossModelPtr quadratic_model(const SampleSpace& space, std::vector<double> values) {
  if (values.size() != space.size())
    throw Error(ErrorCode::DimensionMismatch, "quadratic model values");
  for (double v : values)
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite outcome value");
  return std::make_shared<QuadraticModel>(std::move(values));
}

LossModelPtr bregman_model(const SampleSpace& space, const BaseMeasure& mu, ConvexGenerator gen) {
  check_space(space, mu);
  check_generator(gen);
  return std::make_shared<BregmanModel>(mu, std::move(gen));
}

const BaseMeasure* base_measure_of(const LossModel& model) {
  if (const auto* m = dynamic_cast<const LogModel*>(&model)) return &m->mu();
  if (const auto* m = dynamic_cast<const BregmanModel*>(&model)) return &m->mu();
  return nullptr;
}

double bregman_divergence(const LossModel& model, const Distribution& p, const Distribution& q) {
  const auto* m = dynamic_cast<const BregmanModel*>(&model);
  if (m == nullptr) throw Error(ErrorCode::InvalidArgument, "not a Bregman model");
  if (p.size() != m->outcomes() || q.size() != m->outcomes())
    throw Error(ErrorCode::DimensionMismatch, "bregman_divergence");
  return m->divergence(density_of(p, m->mu()), density_of(q, m->mu()));
}

ProprietyReport check_proper(const LossModel& model, std::size_t trials, std::uint64_t seed) {
  if (!model.distribution_acts())
    throw Error(ErrorCode::InvalidArgument, model.name() + " does not quote distributions");
  Rng rng(seed);
  ProprietyReport report;
  report.worst_margin = kInf;
  const std::size_t n = model.outcomes();
  auto probe = [&](const Distribution& p, const Distribution& q) {
    const ExtReal own = expected_loss(p, model.act_for(p), model);
    const ExtReal other = expected_loss(p, model.act_for(q), model);
    if (other.is_pos_inf()) return;
    const double margin = own.is_pos_inf() ? -kInf : other.value() - own.value();
    if (margin < report.worst_margin) {
      report.worst_margin = margin;
      if (margin < -1e-9) {
        report.passed = false;
        report.witness_p = p;
        report.witness_q = q;
      }
    }
  };
  for (std::size_t t = 0; t < trials; ++t) {
    const double zero_prob = (t % 4 == 3) ? 0.3 : 0.0;
    const Distribution p = random_distribution(rng, n, zero_prob);
    const Distribution q = random_distribution(rng, n, zero_prob);
    probe(p, p);
    probe(p, q);
    ++report.trials;
  }
  if (report.worst_margin == kInf) report.worst_margin = 0.0;
  return report;
}

}  // namespace maxent
