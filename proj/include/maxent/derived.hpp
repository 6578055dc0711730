#pragma once

#include <string>
#include <vector>

#include "maxent/core.hpp"
#include "maxent/losses.hpp"

namespace maxent {

/// A finite family {P_omega} over one sample space, scored with a base game.
struct StatModel {
  std::vector<Distribution> omegas;
  std::vector<std::string> labels;
  LossModelPtr model;
};

/// Checks sizes and fills default labels "w0", "w1", ...
StatModel make_stat_model(LossModelPtr model, std::vector<Distribution> omegas,
                          std::vector<std::string> labels = {});

/// Derived loss D(P_omega, act).
ExtReal derived_loss(const StatModel& sm, std::size_t omega, const Act& act);

/// P_Pi = sum_omega Pi(omega) P_omega.
Distribution mixture_of(const StatModel& sm, const Distribution& prior);

/// H(P_Pi) - sum Pi(omega) H(P_omega); mutual information for the log score.
double value_of_information(const StatModel& sm, const Distribution& prior);

struct CapacityResult {
  Distribution prior;
  Act act;            ///< Bayes act against P_Pi*
  double value = 0.0;  ///< I*
  std::vector<std::size_t> upsilon;  ///< omegas whose derived loss equals I*
  std::vector<double> derived_losses;
  double upsilon_mass = 0.0;
  std::size_t iterations = 0;
  double gap = 0.0;  ///< max_omega derived loss - I*, an upper bound on the suboptimality
  bool converged = false;
};

/// Conditional gradient on the prior simplex. The gradient coordinate of
/// omega is its derived loss against the mixture's Bayes act.
CapacityResult capacity_solve(const StatModel& sm, double tol = 1e-12, std::size_t max_iter = 200000);

/// Alternating updates Pi <- Pi exp(KL(P_omega || P_Pi)) for the log score.
/// Throws InvalidArgument for other models.
CapacityResult blahut_arimoto(const StatModel& sm, double tol = 1e-11,
                              std::size_t max_iter = 2000000);

struct EqualizationReport {
  std::vector<double> losses;
  double spread_on_upsilon = 0.0;
  bool constant_on_upsilon = false;  ///< spread within 1e-5
  bool equalizer = false;            ///< no omega strictly below I* - 1e-5
};

EqualizationReport equalization_report(const CapacityResult& result, const StatModel& sm);

}  // namespace maxent
