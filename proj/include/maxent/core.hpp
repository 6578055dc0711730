#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "maxent/error.hpp"
#include "maxent/ext_real.hpp"

namespace maxent {

class LossModel;

inline constexpr double kNormTol = 1e-9;
inline constexpr double kClampTol = 1e-12;

/// Finite set of labelled outcomes x_1..x_N.
class SampleSpace {
 public:
  explicit SampleSpace(std::vector<std::string> labels);
  /// Outcomes labelled "0".."n-1".
  static SampleSpace indexed(std::size_t n);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }

  friend bool operator==(const SampleSpace&, const SampleSpace&) = default;

 private:
  std::vector<std::string> labels_;
};

/// Probability vector over a finite sample space. Construct with
/// validate_distribution (or Distribution::point_mass / uniform).
class Distribution {
 public:
  static Distribution uniform(std::size_t n);
  static Distribution point_mass(std::size_t n, std::size_t at);

  std::size_t size() const noexcept { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }
  std::span<const double> weights() const noexcept { return w_; }
  const std::vector<double>& vec() const noexcept { return w_; }

  /// Indices with weight > threshold.
  std::vector<std::size_t> support(double threshold = 0.0) const;

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  explicit Distribution(std::vector<double> w) : w_(std::move(w)) {}
  friend Distribution validate_distribution(std::span<const double>, std::size_t);
  friend Distribution renormalized(std::span<const double>);
  std::vector<double> w_;
};

/// Clamps entries in [-1e-12, 0) to zero and checks |sum - 1| <= 1e-9.
/// Pass expected_size = 0 to accept any length.
Distribution validate_distribution(std::span<const double> weights, std::size_t expected_size = 0);
inline Distribution validate_distribution(std::initializer_list<double> weights) {
  return validate_distribution(std::span<const double>(weights.begin(), weights.size()));
}

/// Clamps negatives and divides by the sum. For solver outputs whose
/// normalization drifted by round-off; throws on a non-positive sum.
Distribution renormalized(std::span<const double> weights);

Distribution mixture(const Distribution& p0, const Distribution& p1, double lambda);

/// k x N matrix of statistic values, entry (j, i) = t_j(x_i).
class Statistic {
 public:
  Statistic(std::size_t k, std::size_t n, std::vector<double> row_major);
  /// Single-row statistic t(x_i) = values[i].
  static Statistic scalar(std::vector<double> values);

  std::size_t dim() const noexcept { return k_; }
  std::size_t outcomes() const noexcept { return n_; }
  double operator()(std::size_t j, std::size_t i) const { return m_[j * n_ + i]; }
  std::span<const double> row(std::size_t j) const { return {m_.data() + j * n_, n_}; }
  std::span<const double> data() const noexcept { return m_; }
  /// t(x_i) as a k-vector.
  std::vector<double> column(std::size_t i) const;

  friend bool operator==(const Statistic&, const Statistic&) = default;

 private:
  std::size_t k_;
  std::size_t n_;
  std::vector<double> m_;
};

std::vector<double> moment(const Distribution& p, const Statistic& t);

enum class ActKind {
  Probability,  ///< scoring-rule act: a probability vector q
  Density,      ///< density q w.r.t. a base measure, sum q(x) mu(x) = 1
  Randomized,   ///< randomized point guess zeta over X
  Scalar,       ///< real-valued point estimate
};

std::string_view to_string(ActKind kind) noexcept;

struct Act {
  ActKind kind = ActKind::Probability;
  std::vector<double> payload;

  friend bool operator==(const Act&, const Act&) = default;
};

/// Strictly positive masses mu{x}.
class BaseMeasure {
 public:
  explicit BaseMeasure(std::vector<double> masses);
  static BaseMeasure counting(std::size_t n) { return BaseMeasure(std::vector<double>(n, 1.0)); }

  std::size_t size() const noexcept { return mu_.size(); }
  double operator[](std::size_t i) const { return mu_[i]; }
  std::span<const double> masses() const noexcept { return mu_; }
  double total() const noexcept { return total_; }
  bool is_probability() const noexcept { return is_probability_; }

 private:
  std::vector<double> mu_;
  double total_ = 0.0;
  bool is_probability_ = false;
};

/// Sum_x P(x) L(x, act) with 0 * (+inf) = 0.
ExtReal expected_loss(const Distribution& p, const Act& act, const LossModel& model);
/// Same, against a precomputed loss vector.
ExtReal expected_loss(const Distribution& p, std::span<const ExtReal> losses);

}  // namespace maxent
