#include "maxent/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "maxent/kernels.hpp"

namespace maxent {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Distribution mix(std::span<const Distribution> ps, std::span<const double> weights) {
  if (ps.empty() || ps.size() != weights.size())
    throw Error(ErrorCode::DimensionMismatch, "mixture components and weights");
  std::vector<double> w(ps.front().size(), 0.0);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (ps[i].size() != w.size()) throw Error(ErrorCode::DimensionMismatch, "component size");
    kernels::axpby(weights[i], ps[i].weights(), 1.0, w);
  }
  return validate_distribution(w, w.size());
}

}  // namespace

ExtReal discrepancy(const Distribution& p, const Act& act, const LossModel& model) {
  return expected_loss(p, act, model) - model.entropy(p);
}

ExtReal div(const Distribution& p, const Distribution& q, const LossModel& model) {
  return discrepancy(p, model.act_for(q), model);
}

RelativeModel::RelativeModel(LossModelPtr base, Act zeta0)
    : base_(std::move(base)), zeta0_(std::move(zeta0)) {
  if (!base_) throw Error(ErrorCode::InvalidArgument, "relative model needs a base model");
  base_->validate_act(zeta0_);
  const auto losses = base_->loss_vector(zeta0_);
  ref_.reserve(losses.size());
  for (std::size_t x = 0; x < losses.size(); ++x) {
    if (!losses[x].is_finite())
      throw Error(ErrorCode::InfiniteReferenceLoss,
                  "reference act has infinite loss at outcome " + std::to_string(x));
    ref_.push_back(losses[x].value());
  }
}

std::string RelativeModel::name() const { return "relative(" + base_->name() + ")"; }

ExtReal RelativeModel::loss(std::size_t x, const Act& act) const {
  return base_->loss(x, act) - ref_[x];
}

std::vector<ExtReal> RelativeModel::loss_vector(const Act& act) const {
  auto v = base_->loss_vector(act);
  for (std::size_t x = 0; x < v.size(); ++x) v[x] = v[x] - ref_[x];
  return v;
}

BayesResult RelativeModel::bayes_act(const Distribution& p) const {
  BayesResult r = base_->bayes_act(p);
  r.entropy -= kernels::dot(p.weights(), ref_);
  return r;
}

std::optional<std::vector<std::vector<double>>> RelativeModel::finite_act_losses() const {
  auto m = base_->finite_act_losses();
  if (!m) return m;
  for (std::size_t x = 0; x < m->size(); ++x)
    for (double& v : (*m)[x]) v -= ref_[x];
  return m;
}

std::shared_ptr<const RelativeModel> relative_model(LossModelPtr model, Act zeta0) {
  return std::make_shared<RelativeModel>(std::move(model), std::move(zeta0));
}

std::optional<Act> find_neutral(const LossModel& model) {
  auto act = model.neutral_act();
  if (!act) return std::nullopt;
  const auto losses = model.loss_vector(*act);
  double lo = kInf, hi = -kInf;
  for (const auto& l : losses) {
    if (!l.is_finite()) return std::nullopt;
    lo = std::min(lo, l.value());
    hi = std::max(hi, l.value());
  }
  if (hi - lo > 1e-9) return std::nullopt;
  return act;
}

MixtureResiduals mixture_identities(const LossModel& model, std::span<const Distribution> ps,
                                    std::span<const double> weights, const Distribution& q) {
  const Distribution pbar = mix(ps, weights);
  double sum_h = 0.0, sum_d_bar = 0.0, sum_d_q = 0.0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (weights[i] == 0.0) continue;
    sum_h += weights[i] * model.entropy(ps[i]);
    sum_d_bar += weights[i] * div(ps[i], pbar, model).value();
    sum_d_q += weights[i] * div(ps[i], q, model).value();
  }
  MixtureResiduals r;
  r.entropy_identity = std::abs(model.entropy(pbar) - sum_h - sum_d_bar);
  const ExtReal d_bar_q = div(pbar, q, model);
  if (d_bar_q.is_finite() && std::isfinite(sum_d_q)) {
    r.divergence_identity = std::abs(d_bar_q.value() - sum_d_q + sum_d_bar);
  } else {
    r.divergence_identity = (d_bar_q.is_pos_inf() && std::isinf(sum_d_q)) ? 0.0 : kInf;
  }
  return r;
}

PythagoreanReport pythagorean_check(const LossModel& model, std::span<const Distribution> points,
                                    const Distribution& p_star, const Act& zeta_star,
                                    const Act& zeta0) {
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "no test points");
  const ExtReal d_star_ref = discrepancy(p_star, zeta0, model);
  if (!d_star_ref.is_finite())
    throw Error(ErrorCode::InfiniteReferenceLoss, "D(P*, zeta0) is infinite");
  PythagoreanReport r;
  r.min_slack = kInf;
  r.max_slack = -kInf;
  for (const auto& p : points) {
    const ExtReal d_ref = discrepancy(p, zeta0, model);
    const ExtReal d_star = discrepancy(p, zeta_star, model);
    double slack;
    if (d_ref.is_pos_inf()) {
      slack = kInf;
    } else if (d_star.is_pos_inf()) {
      slack = -kInf;
    } else {
      slack = d_ref.value() - d_star.value() - d_star_ref.value();
    }
    r.slacks.push_back(slack);
    r.min_slack = std::min(r.min_slack, slack);
    r.max_slack = std::max(r.max_slack, slack);
  }
  r.holds = r.min_slack >= -1e-8;
  r.equality = r.min_slack >= -1e-8 && r.max_slack <= 1e-8;
  return r;
}

EqualizerReport equalizer_check(const LossModel& model, std::span<const Distribution> points,
                                const Act& zeta) {
  EqualizerReport r;
  if (points.empty()) return r;
  const auto losses = model.loss_vector(zeta);
  double lo = kInf, hi = -kInf;
  for (const auto& p : points) {
    const ExtReal l = expected_loss(p, losses);
    if (!l.is_finite()) {
      r.spread = kInf;
      r.level = kInf;
      return r;
    }
    lo = std::min(lo, l.value());
    hi = std::max(hi, l.value());
  }
  r.spread = hi - lo;
  r.level = 0.5 * (hi + lo);
  r.is_equalizer = r.spread <= 1e-8;
  return r;
}

}  // namespace maxent
