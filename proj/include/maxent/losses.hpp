#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "maxent/core.hpp"

namespace maxent {

enum class Strictness { Strict, Semistrict, RelativelyStrict, None };

enum class LossFamily { Brier, Log, ZeroOne, Quadratic, Bregman, Relative, Custom };

struct BayesResult {
  Act act;
  double entropy = 0.0;
};

/// A decision problem over a finite sample space: pointwise loss, Bayes act
/// and generalized entropy H(P) = min_a L(P, a).
class LossModel {
 public:
  virtual ~LossModel() = default;

  virtual std::string name() const = 0;
  virtual LossFamily family() const { return LossFamily::Custom; }
  virtual ActKind act_kind() const = 0;
  virtual Strictness strictness() const = 0;
  virtual std::size_t outcomes() const = 0;

  /// Throws InvalidAct when the act does not belong to this model's act space.
  virtual void validate_act(const Act& act) const = 0;
  virtual ExtReal loss(std::size_t x, const Act& act) const = 0;
  virtual std::vector<ExtReal> loss_vector(const Act& act) const;

  /// A Bayes act against p and the entropy H(p). For models with several
  /// Bayes acts this is the canonical representative.
  virtual BayesResult bayes_act(const Distribution& p) const = 0;
  virtual double entropy(const Distribution& p) const { return bayes_act(p).entropy; }

  /// True when acts are (densities of) distributions, i.e. a scoring rule.
  virtual bool distribution_acts() const { return false; }
  /// The act that quotes distribution q (scoring rules only).
  virtual Act act_for(const Distribution& q) const { return bayes_act(q).act; }
  /// For scoring rules: the distribution an act quotes.
  virtual std::optional<Distribution> quoted_distribution(const Act&) const { return std::nullopt; }

  /// Loss matrix (row = outcome, column = pure act) when the pure act set is
  /// finite, so that H is polyhedral: H(P) = min_j sum_x P(x) L(x, a_j).
  virtual std::optional<std::vector<std::vector<double>>> finite_act_losses() const {
    return std::nullopt;
  }
  /// Randomized act mixing the pure acts above.
  virtual Act mix_pure_acts(std::span<const double> /*weights*/) const {
    throw Error(ErrorCode::InvalidArgument, name() + " has no finite pure act set");
  }

  /// Closed-form act with constant loss vector, when the model has one.
  virtual std::optional<Act> neutral_act() const { return std::nullopt; }

  /// Bayes acts against p, described as the set of outcomes the act may
  /// charge (zero-one: the modes). Empty for strict models.
  virtual std::vector<std::size_t> bayes_act_support(const Distribution& /*p*/) const { return {}; }
};

using LossModelPtr = std::shared_ptr<const LossModel>;

/// Convex psi on [0, inf) generating a separable Bregman score.
struct ConvexGenerator {
  std::string name;
  std::function<double(double)> psi;
  std::function<double(double)> psi_prime;  ///< may return -inf at 0
  bool strictly_convex = true;

  static ConvexGenerator entropy();                        ///< s log s
  static ConvexGenerator square(double offset = 0.0);      ///< s^2 + offset
  static ConvexGenerator power(double exponent);           ///< (s^a - s) / (a - 1), a > 1
};

/// Throws InvalidGenerator unless psi is convex on a 1000-point grid and
/// psi_prime agrees with central differences on (0, 1).
void check_generator(const ConvexGenerator& gen);

LossModelPtr brier_model(const SampleSpace& space);
LossModelPtr log_model(const SampleSpace& space, const BaseMeasure& mu);
LossModelPtr zero_one_model(const SampleSpace& space);
LossModelPtr quadratic_model(const SampleSpace& space, std::vector<double> values);
LossModelPtr bregman_model(const SampleSpace& space, const BaseMeasure& mu, ConvexGenerator gen);

/// Base measure of a log or Bregman model.
const BaseMeasure* base_measure_of(const LossModel& model);

/// d_psi(P, Q) = sum_x mu(x) [psi(p) - psi(q) - psi'(q)(p - q)] on densities,
/// by direct summation. Bregman models only.
double bregman_divergence(const LossModel& model, const Distribution& p, const Distribution& q);

struct ProprietyReport {
  bool passed = true;
  std::size_t trials = 0;
  double worst_margin = 0.0;  ///< min over trials of S(P,Q) - S(P,P)
  std::optional<Distribution> witness_p;
  std::optional<Distribution> witness_q;
};

/// Random (P, Q) pairs (plus Q = P) checking S(P, Q) >= S(P, P) - 1e-9.
ProprietyReport check_proper(const LossModel& model, std::size_t trials, std::uint64_t seed);

}  // namespace maxent
