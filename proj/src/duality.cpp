#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "maxent/divergence.hpp"
#include "maxent/kernels.hpp"
#include "maxent/maxent.hpp"
#include "maxent/numeric.hpp"

namespace maxent {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> tilt_costs(const Statistic& t, std::span<const double> beta) {
  if (beta.size() != t.dim()) throw Error(ErrorCode::DimensionMismatch, "beta length");
  std::vector<double> c(t.outcomes(), 0.0);
  for (std::size_t j = 0; j < t.dim(); ++j) kernels::axpby(beta[j], t.row(j), 1.0, c);
  return c;
}

TiltResult finish_tilt(const LossModel& model, const Statistic& t, std::span<const double> beta,
                       std::vector<double> w) {
  for (double& v : w) v = std::max(v, 0.0);
  Distribution q = renormalized(w);
  auto bayes = model.bayes_act(q);
  const auto c = tilt_costs(t, beta);
  TiltResult r{q, bayes.entropy - kernels::dot(q.weights(), c), bayes.act};
  if (model.family() == LossFamily::Log)
    if (const BaseMeasure* mu = base_measure_of(model))
      r.kappa_residual = std::abs(r.chi - log_partition(*mu, t, beta));
  return r;
}

TiltResult polyhedral_tilt(const LossModel& model, const Statistic& t, std::span<const double> beta,
                           const std::vector<std::vector<double>>& losses) {
  const std::size_t n = t.outcomes();
  const std::size_t acts = losses.front().size();
  const auto c = tilt_costs(t, beta);

  // max s - c'P  s.t.  s <= sum_x L(x, j) P(x) for every pure act j.
  numeric::LinearProgram lp;
  lp.c = c;
  lp.c.push_back(-1.0);
  lp.free.assign(n + 1, false);
  lp.free[n] = true;
  for (std::size_t j = 0; j < acts; ++j) {
    std::vector<double> row(n + 1);
    for (std::size_t x = 0; x < n; ++x) row[x] = -losses[x][j];
    row[n] = 1.0;
    lp.a_ub.push_back(std::move(row));
    lp.b_ub.push_back(0.0);
  }
  std::vector<double> ones(n + 1, 1.0);
  ones[n] = 0.0;
  lp.a_eq.push_back(std::move(ones));
  lp.b_eq.push_back(1.0);
  const auto res = numeric::solve_lp(lp);
  if (res.status != numeric::LpStatus::Optimal)
    throw Error(ErrorCode::Infeasible, "tilt program has no optimum");
  const double chi = -res.objective;

  // Minimum-norm maximizer.
  numeric::ProjectionProblem face;
  face.target.assign(n, 0.0);
  face.a_eq.push_back(std::vector<double>(n, 1.0));
  face.b_eq.push_back(1.0);
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<double> row(n, 0.0);
    row[x] = -1.0;
    face.a_in.push_back(std::move(row));
    face.b_in.push_back(0.0);
  }
  for (std::size_t j = 0; j < acts; ++j) {
    std::vector<double> row(n);
    for (std::size_t x = 0; x < n; ++x) row[x] = c[x] - losses[x][j];
    face.a_in.push_back(std::move(row));
    face.b_in.push_back(-chi + 1e-12);
  }
  const auto proj = numeric::project(face);
  std::vector<double> w(res.x.begin(), res.x.begin() + static_cast<long>(n));
  if (proj.feasible) w = proj.x;
  auto r = finish_tilt(model, t, beta, std::move(w));
  r.iterations = res.pivots;
  return r;
}

TiltResult smooth_tilt(const LossModel& model, const Statistic& t, std::span<const double> beta,
                       const SolveOptions& options) {
  const std::size_t n = t.outcomes();
  const auto c = tilt_costs(t, beta);
  numeric::FwProblem prob;
  prob.atoms = n;
  prob.eval = [&](std::span<const double> w, std::vector<double>& grad) {
    const Distribution p = renormalized(w);
    const auto bayes = model.bayes_act(p);
    const auto losses = model.loss_vector(bayes.act);
    for (std::size_t x = 0; x < n; ++x)
      grad[x] = losses[x].is_finite() ? losses[x].value() - c[x] : kInf;
    return bayes.entropy - kernels::dot(p.weights(), c);
  };
  const auto fw = numeric::pairwise_frank_wolfe(
      prob, std::vector<double>(n, 1.0 / static_cast<double>(n)), {options.tol, options.max_iter});
  auto r = finish_tilt(model, t, beta, fw.w);
  r.iterations = fw.iterations;
  r.gap = fw.gap;
  r.converged = fw.converged;
  return r;
}

std::string describe_tau(const std::vector<double>& tau) {
  std::string s = "(";
  for (std::size_t j = 0; j < tau.size(); ++j) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%.6g", j ? ", " : "", tau[j]);
    s += buf;
  }
  return s + ")";
}

}  // namespace

TiltResult natural_tilt(const LossModel& model, const Statistic& t, std::span<const double> beta,
                        const SolveOptions& options) {
  if (model.outcomes() != t.outcomes())
    throw Error(ErrorCode::DimensionMismatch, "model and statistic sizes differ");
  if (auto losses = model.finite_act_losses()) return polyhedral_tilt(model, t, beta, *losses);
  return smooth_tilt(model, t, beta, options);
}

double log_partition(const BaseMeasure& mu, const Statistic& t, std::span<const double> beta) {
  if (mu.size() != t.outcomes()) throw Error(ErrorCode::DimensionMismatch, "base measure size");
  const auto c = tilt_costs(t, beta);
  double amax = -kInf;
  for (std::size_t x = 0; x < c.size(); ++x)
    if (mu[x] > 0.0) amax = std::max(amax, std::log(mu[x]) - c[x]);
  double z = 0.0;
  for (std::size_t x = 0; x < c.size(); ++x)
    if (mu[x] > 0.0) z += std::exp(std::log(mu[x]) - c[x] - amax);
  return amax + std::log(z);
}

bool ConjugacyReport::passed(double grid_tol, double matched_tol) const {
  return lower_bound_violations == 0 && max_grid_residual <= grid_tol &&
         max_matched_residual <= matched_tol;
}

ConjugacyReport conjugacy_check(const LossModel& model, const Statistic& t,
                                const std::vector<std::vector<double>>& tau_grid,
                                const std::vector<std::vector<double>>& beta_grid) {
  ConjugacyReport rep;
  rep.chi.reserve(beta_grid.size());
  for (const auto& b : beta_grid) rep.chi.push_back(natural_tilt(model, t, b).chi);

  for (const auto& sigma : tau_grid) {
    const GammaTau g(SampleSpace::indexed(t.outcomes()), t, sigma);
    const SaddlePoint sp = solve(model, g);
    ConjugacyRow row;
    row.sigma = sigma;
    row.h = sp.value;
    row.grid_min = kInf;
    for (std::size_t i = 0; i < beta_grid.size(); ++i) {
      const double bt = kernels::dot(beta_grid[i], sigma);
      row.grid_min = std::min(row.grid_min, rep.chi[i] + bt);
      if (rep.chi[i] < row.h - bt - 1e-9) ++rep.lower_bound_violations;
    }
    row.grid_residual = std::abs(row.grid_min - row.h);
    if (sp.dual) {
      const double chi = natural_tilt(model, t, sp.dual->beta).chi;
      row.matched_residual = std::abs(chi + kernels::dot(sp.dual->beta, sigma) - row.h);
      rep.max_matched_residual = std::max(rep.max_matched_residual, *row.matched_residual);
    }
    rep.max_grid_residual = std::max(rep.max_grid_residual, row.grid_residual);
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

std::vector<std::vector<double>> linear_grid(double from, double to, std::size_t steps) {
  if (steps == 0) return {{from}};
  std::vector<std::vector<double>> grid;
  grid.reserve(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) {
    const double v = from + (to - from) * static_cast<double>(i) / static_cast<double>(steps);
    grid.push_back({std::abs(v) < 1e-15 ? 0.0 : v});
  }
  return grid;
}

FamilyTrace trace_family(const LossModel& model, const Statistic& t,
                         const std::vector<std::vector<double>>& tau_grid,
                         const SolveOptions& options) {
  FamilyTrace tr{model.name(), t, {}, {}};
  for (const auto& tau : tau_grid) {
    TraceRow row;
    row.tau = tau;
    try {
      const GammaTau g(SampleSpace::indexed(t.outcomes()), t, tau);
      row.point = solve(model, g, options);
    } catch (const Error& e) {
      row.error = e.what();
    }
    tr.rows.push_back(std::move(row));
  }

  std::vector<const TraceRow*> ok;
  for (const auto& r : tr.rows)
    if (r.point) ok.push_back(&r);
  if (t.dim() == 1) {
    for (std::size_t i = 1; i < tr.rows.size(); ++i)
      if (!(tr.rows[i].tau[0] > tr.rows[i - 1].tau[0]))
        tr.violations.push_back("tau not increasing at " + describe_tau(tr.rows[i].tau));
    for (std::size_t i = 2; i < ok.size(); ++i) {
      const double a = ok[i - 2]->tau[0], b = ok[i - 1]->tau[0], c = ok[i]->tau[0];
      if (!(a < b && b < c)) continue;
      const double lam = (c - b) / (c - a);
      const double chord = lam * ok[i - 2]->point->value + (1.0 - lam) * ok[i]->point->value;
      if (ok[i - 1]->point->value < chord - 1e-7)
        tr.violations.push_back("h not concave at " + describe_tau(ok[i - 1]->tau));
    }
  }
  for (std::size_t i = 1; i < ok.size(); ++i) {
    const auto& d1 = ok[i - 1]->point->dual;
    const auto& d2 = ok[i]->point->dual;
    if (!d1 || !d2) continue;
    double prod = 0.0;
    for (std::size_t j = 0; j < t.dim(); ++j)
      prod += (ok[i]->tau[j] - ok[i - 1]->tau[j]) * (d2->beta[j] - d1->beta[j]);
    if (prod > 1e-7)
      tr.violations.push_back("beta not monotone between " + describe_tau(ok[i - 1]->tau) +
                              " and " + describe_tau(ok[i]->tau));
  }
  return tr;
}

DerivativeReport beta_derivative_check(const LossModel& model, const FamilyTrace& trace,
                                       double tolerance) {
  if (trace.statistic.dim() != 1)
    throw Error(ErrorCode::InvalidArgument, "derivative check needs a one-dimensional statistic");
  DerivativeReport rep;
  rep.step = 1e-5;
  rep.tolerance = std::max(tolerance, 3.0 * rep.step * rep.step);
  const double d = rep.step;
  for (const auto& r : trace.rows) {
    if (!r.point || !r.point->dual || !r.point->flags.tau_interior) continue;
    DerivativeRow row;
    row.tau = r.tau[0];
    row.beta = r.point->dual->beta[0];
    const double left_tau[] = {row.tau - d};
    const double right_tau[] = {row.tau + d};
    const double hl = specific_entropy(model, trace.statistic, left_tau);
    const double hr = specific_entropy(model, trace.statistic, right_tau);
    const double h0 = r.point->value;
    row.left_slope = (h0 - hl) / d;
    row.right_slope = (hr - h0) / d;
    row.kink = std::abs(row.left_slope - row.right_slope) > 1e-3;
    if (row.kink) {
      const double lo = std::min(row.left_slope, row.right_slope);
      const double hi = std::max(row.left_slope, row.right_slope);
      row.error = row.beta < lo ? lo - row.beta : (row.beta > hi ? row.beta - hi : 0.0);
    } else {
      row.error = std::abs(0.5 * (row.left_slope + row.right_slope) - row.beta);
    }
    row.passed = std::isfinite(row.error) && row.error <= rep.tolerance;
    rep.passed = rep.passed && row.passed;
    rep.rows.push_back(row);
  }
  return rep;
}

SupportScan support_scan(const LossModel& model, const FamilyTrace& trace,
                         const Distribution& p_star) {
  if (trace.statistic.dim() != 1)
    throw Error(ErrorCode::InvalidArgument, "support scan needs a one-dimensional statistic");
  SupportScan scan;
  scan.max_support = -kInf;
  for (const auto& r : trace.rows) {
    if (!r.point) continue;
    const ExtReal l = expected_loss(p_star, r.point->zeta_star, model);
    const double s = l.is_finite() ? -l.value() : -kInf;
    if (s > scan.max_support) {
      scan.max_support = s;
      scan.argmax_tau = r.tau[0];
      scan.argmax_row = scan.tau.size();
    }
    scan.tau.push_back(r.tau[0]);
    scan.support.push_back(s);
  }
  return scan;
}

std::vector<TiltRow> lafferty_family(LossModelPtr model, const Distribution& p0, const Statistic& t,
                                     const std::vector<std::vector<double>>& beta_grid) {
  const Act zeta0 = model->bayes_act(p0).act;
  const auto rel = relative_model(std::move(model), zeta0);
  std::vector<TiltRow> rows;
  rows.reserve(beta_grid.size());
  for (const auto& b : beta_grid) {
    auto tilt = natural_tilt(*rel, t, b);
    rows.push_back(TiltRow{b, tilt.q, tilt.chi, moment(tilt.q, t)});
  }
  return rows;
}

}  // namespace maxent
