#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "maxent/core.hpp"
#include "maxent/losses.hpp"

namespace maxent {

/// D(P, act) = L(P, act) - H(P): the regret of act against P.
ExtReal discrepancy(const Distribution& p, const Act& act, const LossModel& model);

/// d(P, Q) = D(P, act_for(Q)). For models whose acts are not distributions
/// the canonical Bayes act against Q stands in for Q.
ExtReal div(const Distribution& p, const Distribution& q, const LossModel& model);

/// The game with losses L(x, a) - L(x, zeta0). Same acts and Bayes acts as
/// the base model; its entropy is H0(P) = -D(P, zeta0).
class RelativeModel final : public LossModel {
 public:
  RelativeModel(LossModelPtr base, Act zeta0);

  const LossModel& base() const noexcept { return *base_; }
  const Act& reference_act() const noexcept { return zeta0_; }
  const std::vector<double>& reference_losses() const noexcept { return ref_; }

  std::string name() const override;
  LossFamily family() const override { return LossFamily::Relative; }
  ActKind act_kind() const override { return base_->act_kind(); }
  Strictness strictness() const override { return base_->strictness(); }
  std::size_t outcomes() const override { return base_->outcomes(); }

  void validate_act(const Act& act) const override { base_->validate_act(act); }
  ExtReal loss(std::size_t x, const Act& act) const override;
  std::vector<ExtReal> loss_vector(const Act& act) const override;
  BayesResult bayes_act(const Distribution& p) const override;

  bool distribution_acts() const override { return base_->distribution_acts(); }
  Act act_for(const Distribution& q) const override { return base_->act_for(q); }
  std::optional<Distribution> quoted_distribution(const Act& act) const override {
    return base_->quoted_distribution(act);
  }
  std::optional<std::vector<std::vector<double>>> finite_act_losses() const override;
  Act mix_pure_acts(std::span<const double> weights) const override {
    return base_->mix_pure_acts(weights);
  }
  /// The reference act itself has relative loss identically zero.
  std::optional<Act> neutral_act() const override { return zeta0_; }
  std::vector<std::size_t> bayes_act_support(const Distribution& p) const override {
    return base_->bayes_act_support(p);
  }

 private:
  LossModelPtr base_;
  Act zeta0_;
  std::vector<double> ref_;
};

/// Throws InfiniteReferenceLoss when some L(x, zeta0) is +inf.
std::shared_ptr<const RelativeModel> relative_model(LossModelPtr model, Act zeta0);

/// An act with constant loss vector (spread <= 1e-9), if the model has one.
std::optional<Act> find_neutral(const LossModel& model);

struct MixtureResiduals {
  double entropy_identity = 0.0;     ///< |H(Pbar) - sum p_i H(P_i) - sum p_i d(P_i, Pbar)|
  double divergence_identity = 0.0;  ///< |d(Pbar, Q) - sum p_i d(P_i, Q) + sum p_i d(P_i, Pbar)|
};

/// Residuals of the two mixture identities for Pbar = sum_i weights_i P_i.
MixtureResiduals mixture_identities(const LossModel& model, std::span<const Distribution> ps,
                                    std::span<const double> weights, const Distribution& q);

struct PythagoreanReport {
  std::vector<double> slacks;  ///< d(P, zeta0) - d(P, zeta*) - d(P*, zeta0) per test point
  double min_slack = 0.0;
  double max_slack = 0.0;
  bool holds = false;     ///< min_slack >= -1e-8
  bool equality = false;  ///< every |slack| <= 1e-8
};

PythagoreanReport pythagorean_check(const LossModel& model, std::span<const Distribution> points,
                                    const Distribution& p_star, const Act& zeta_star,
                                    const Act& zeta0);

struct EqualizerReport {
  bool is_equalizer = false;
  double spread = 0.0;  ///< max - min of L(P, zeta) over the test points (+inf if unbounded)
  double level = 0.0;   ///< the common value (mean of min and max)
};

EqualizerReport equalizer_check(const LossModel& model, std::span<const Distribution> points,
                                const Act& zeta);

}  // namespace maxent
