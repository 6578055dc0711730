#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maxent/constraints.hpp"
#include "maxent/core.hpp"
#include "maxent/losses.hpp"

namespace maxent {

/// Loss of the act written as beta0 + beta' t(x).
struct DualCoefficients {
  double beta0 = 0.0;
  std::vector<double> beta;
};

struct SaddleFlags {
  bool is_linear = false;     ///< loss vector affine in t over all outcomes
  bool is_regular = false;    ///< affine on supp P*, and below the plane elsewhere
  bool is_equalizer = false;  ///< L(P, zeta*) constant over the polytope
  bool tau_interior = false;  ///< tau in the relative interior of the hull of t(X)
};

/// Per-coordinate range of the set of robust Bayes acts, when it is not a single act.
struct ActFamily {
  std::vector<double> lower;
  std::vector<double> upper;
};

struct SaddlePoint {
  Distribution p_star;
  Act zeta_star;
  double value = 0.0;  ///< H* = h(tau)
  std::optional<DualCoefficients> dual;
  SaddleFlags flags;
  double bayes_margin = 0.0;  ///< L(P*, zeta*) - H(P*)
  double worst_margin = 0.0;  ///< max over vertices V of L(V, zeta*) - H*
  double equalizer_spread = 0.0;
  std::optional<ActFamily> family;
  std::string solver;
  std::size_t iterations = 0;
  double gap = 0.0;  ///< Frank-Wolfe gap or Newton gradient norm
  bool converged = true;
};

struct SolveOptions {
  double tol = 1e-8;
  std::size_t max_iter = 100000;
};

SaddlePoint solve_brier(const GammaTau& g);
SaddlePoint solve_log(const GammaTau& g, const BaseMeasure& mu);
SaddlePoint solve_zero_one(const GammaTau& g);
/// Conditional gradient over the polytope's vertices; an exact matrix-game LP
/// when the model has finitely many pure acts.
SaddlePoint solve_generic(const LossModel& model, const GammaTau& g, const SolveOptions& options = {});

/// Dispatches to the specialized solver for the model's family, else solve_generic.
SaddlePoint solve(const LossModel& model, const GammaTau& g, const SolveOptions& options = {});

/// h(tau); -inf when no distribution meets the targets.
double specific_entropy(const LossModel& model, const Statistic& t, std::span<const double> tau);

struct TiltResult {
  Distribution q;  ///< Q_beta, maximizer of H(P) - beta' E_P T over the simplex
  double chi = 0.0;
  Act act;
  std::size_t iterations = 0;
  double gap = 0.0;
  bool converged = true;
  /// Log models only: |chi - kappa(beta)|, kappa the log-partition function.
  std::optional<double> kappa_residual;
};

TiltResult natural_tilt(const LossModel& model, const Statistic& t, std::span<const double> beta,
                        const SolveOptions& options = {1e-12, 100000});

/// kappa(beta) = log sum_x mu(x) exp(-beta' t(x)).
double log_partition(const BaseMeasure& mu, const Statistic& t, std::span<const double> beta);

struct ConjugacyRow {
  std::vector<double> sigma;
  double h = 0.0;
  double grid_min = 0.0;  ///< min over the beta grid of chi(beta) + beta' sigma
  double grid_residual = 0.0;
  std::optional<double> matched_residual;  ///< |chi(beta*) + beta*' sigma - h| at the solver's beta
};

struct ConjugacyReport {
  std::vector<ConjugacyRow> rows;
  std::vector<double> chi;  ///< chi over the beta grid
  double max_grid_residual = 0.0;
  double max_matched_residual = 0.0;
  std::size_t lower_bound_violations = 0;  ///< pairs with chi(beta) < h(tau) - beta' tau - 1e-9
  bool passed(double grid_tol = 1e-3, double matched_tol = 1e-8) const;
};

ConjugacyReport conjugacy_check(const LossModel& model, const Statistic& t,
                                const std::vector<std::vector<double>>& tau_grid,
                                const std::vector<std::vector<double>>& beta_grid);

struct TraceRow {
  std::vector<double> tau;
  std::optional<SaddlePoint> point;
  std::string error;  ///< set when the row failed
};

struct FamilyTrace {
  std::string model;
  Statistic statistic;
  std::vector<TraceRow> rows;
  std::vector<std::string> violations;  ///< broken ordering / concavity / monotone-duality checks
};

FamilyTrace trace_family(const LossModel& model, const Statistic& t,
                         const std::vector<std::vector<double>>& tau_grid,
                         const SolveOptions& options = {});

/// Evenly spaced one-dimensional grid, endpoints included.
std::vector<std::vector<double>> linear_grid(double from, double to, std::size_t steps);

struct DerivativeRow {
  double tau = 0.0;
  double beta = 0.0;
  double left_slope = 0.0;
  double right_slope = 0.0;
  bool kink = false;
  double error = 0.0;  ///< |h' - beta|, or distance of beta to [right, left] at a kink
  bool passed = false;
};

struct DerivativeReport {
  std::vector<DerivativeRow> rows;
  double step = 0.0;
  double tolerance = 0.0;
  bool passed = true;
};

/// Compares beta with one-sided difference quotients of h at each interior
/// regular row of a one-dimensional trace.
DerivativeReport beta_derivative_check(const LossModel& model, const FamilyTrace& trace,
                                       double tolerance = 1e-4);

struct SupportScan {
  std::vector<double> tau;
  std::vector<double> support;  ///< s*(zeta_tau) = -L(P*, zeta_tau), -inf when unbounded
  double argmax_tau = 0.0;
  double max_support = 0.0;
  std::size_t argmax_row = 0;
};

SupportScan support_scan(const LossModel& model, const FamilyTrace& trace, const Distribution& p_star);

struct TiltRow {
  std::vector<double> beta;
  Distribution q;
  double chi = 0.0;
  std::vector<double> tau;  ///< E_Q T
};

/// Q_beta minimizing beta' E_P T + d(P, P0), computed as the natural tilt of
/// the game relative to the Bayes act against P0.
std::vector<TiltRow> lafferty_family(LossModelPtr model, const Distribution& p0, const Statistic& t,
                                     const std::vector<std::vector<double>>& beta_grid);

}  // namespace maxent
