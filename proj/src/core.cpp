#include "maxent/core.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "maxent/kernels.hpp"
#include "maxent/losses.hpp"

namespace maxent {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::LambdaOutOfRange: return "LambdaOutOfRange";
    case ErrorCode::UndefinedExpectation: return "UndefinedExpectation";
    case ErrorCode::ZeroBaseMass: return "ZeroBaseMass";
    case ErrorCode::InvalidGenerator: return "InvalidGenerator";
    case ErrorCode::InvalidAct: return "InvalidAct";
    case ErrorCode::ProprietyViolation: return "ProprietyViolation";
    case ErrorCode::InfiniteReferenceLoss: return "InfiniteReferenceLoss";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::NewtonDivergence: return "NewtonDivergence";
    case ErrorCode::MaxIterExceeded: return "MaxIterExceeded";
    case ErrorCode::CombinatorialBlowup: return "CombinatorialBlowup";
    case ErrorCode::SimplexCycle: return "SimplexCycle";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

std::string_view to_string(ActKind kind) noexcept {
  switch (kind) {
    case ActKind::Probability: return "probability";
    case ActKind::Density: return "density";
    case ActKind::Randomized: return "randomized";
    case ActKind::Scalar: return "scalar";
  }
  return "unknown";
}

SampleSpace::SampleSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw Error(ErrorCode::InvalidArgument, "sample space must be nonempty");
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size())
    throw Error(ErrorCode::InvalidArgument, "sample space labels must be distinct");
}

SampleSpace SampleSpace::indexed(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return SampleSpace(std::move(labels));
}

Distribution Distribution::uniform(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::DimensionMismatch, "empty distribution");
  return Distribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Distribution Distribution::point_mass(std::size_t n, std::size_t at) {
  if (at >= n) throw Error(ErrorCode::DimensionMismatch, "point mass index out of range");
  std::vector<double> w(n, 0.0);
  w[at] = 1.0;
  return Distribution(std::move(w));
}

std::vector<std::size_t> Distribution::support(double threshold) const {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < w_.size(); ++i)
    if (w_[i] > threshold) s.push_back(i);
  return s;
}

Distribution validate_distribution(std::span<const double> weights, std::size_t expected_size) {
  if (weights.empty() || (expected_size != 0 && weights.size() != expected_size))
    throw Error(ErrorCode::DimensionMismatch,
                "expected " + std::to_string(expected_size) + " weights, got " +
                    std::to_string(weights.size()));
  std::vector<double> w(weights.begin(), weights.end());
  for (double& x : w) {
    if (!std::isfinite(x)) throw Error(ErrorCode::NotNormalized, "non-finite weight");
    if (x < -kClampTol) throw Error(ErrorCode::NegativeWeight, std::to_string(x));
    if (x < 0.0) x = 0.0;
  }
  const double total = kernels::sum(w);
  if (std::abs(total - 1.0) > kNormTol)
    throw Error(ErrorCode::NotNormalized, "weights sum to " + std::to_string(total));
  return Distribution(std::move(w));
}

Distribution renormalized(std::span<const double> weights) {
  std::vector<double> w(weights.begin(), weights.end());
  double total = 0.0;
  for (double& x : w) {
    if (!std::isfinite(x)) throw Error(ErrorCode::NotNormalized, "non-finite weight");
    x = std::max(x, 0.0);
    total += x;
  }
  if (!(total > 0.0)) throw Error(ErrorCode::NotNormalized, "weights have no positive mass");
  for (double& x : w) x /= total;
  return Distribution(std::move(w));
}

Distribution mixture(const Distribution& p0, const Distribution& p1, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw Error(ErrorCode::LambdaOutOfRange, std::to_string(lambda));
  if (p0.size() != p1.size()) throw Error(ErrorCode::DimensionMismatch, "mixture of unequal sizes");
  std::vector<double> w = p0.vec();
  kernels::axpby(lambda, p1.weights(), 1.0 - lambda, w);
  return validate_distribution(w, p0.size());
}

Statistic::Statistic(std::size_t k, std::size_t n, std::vector<double> row_major)
    : k_(k), n_(n), m_(std::move(row_major)) {
  if (k_ == 0 || n_ == 0) throw Error(ErrorCode::InvalidArgument, "statistic needs k >= 1, N >= 1");
  if (m_.size() != k_ * n_) throw Error(ErrorCode::DimensionMismatch, "statistic matrix size");
  for (double v : m_)
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite statistic value");
}

Statistic Statistic::scalar(std::vector<double> values) {
  const std::size_t n = values.size();
  return Statistic(1, n, std::move(values));
}

std::vector<double> Statistic::column(std::size_t i) const {
  std::vector<double> c(k_);
  for (std::size_t j = 0; j < k_; ++j) c[j] = (*this)(j, i);
  return c;
}

std::vector<double> moment(const Distribution& p, const Statistic& t) {
  if (p.size() != t.outcomes()) throw Error(ErrorCode::DimensionMismatch, "moment dimensions");
  std::vector<double> out(t.dim());
  kernels::gemv(t.data(), t.dim(), p.weights(), out);
  return out;
}

BaseMeasure::BaseMeasure(std::vector<double> masses) : mu_(std::move(masses)) {
  if (mu_.empty()) throw Error(ErrorCode::ZeroBaseMass, "empty base measure");
  for (double m : mu_) {
    if (!(m > 0.0) || !std::isfinite(m))
      throw Error(ErrorCode::ZeroBaseMass, "base measure masses must be positive and finite");
  }
  total_ = kernels::sum(mu_);
  is_probability_ = std::abs(total_ - 1.0) <= kNormTol;
}

ExtReal expected_loss(const Distribution& p, std::span<const ExtReal> losses) {
  if (losses.size() != p.size()) throw Error(ErrorCode::DimensionMismatch, "loss vector length");
  bool all_finite = true;
  for (const ExtReal& l : losses) all_finite = all_finite && l.is_finite();
  if (all_finite) {
    std::vector<double> v(losses.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = losses[i].value();
    return kernels::dot(p.weights(), v);
  }
  ExtReal acc = 0.0;
  for (std::size_t i = 0; i < losses.size(); ++i) acc += scale(p[i], losses[i]);
  return acc;
}

ExtReal expected_loss(const Distribution& p, const Act& act, const LossModel& model) {
  if (p.size() != model.outcomes()) throw Error(ErrorCode::DimensionMismatch, "distribution size");
  model.validate_act(act);
  const auto losses = model.loss_vector(act);
  return expected_loss(p, losses);
}

}  // namespace maxent
