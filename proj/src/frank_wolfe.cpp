#include <cmath>
#include <cstdlib>
#include <limits>

#include "maxent/error.hpp"
#include "maxent/numeric.hpp"

namespace maxent::numeric {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Index of the largest gradient entry and of the smallest among atoms with weight.
void extreme_atoms(const std::vector<double>& w, const std::vector<double>& g, std::size_t& best,
                   std::size_t& worst) {
  best = 0;
  worst = w.size();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (g[i] > g[best]) best = i;
    if (w[i] > 0.0 && (worst == w.size() || g[i] < g[worst])) worst = i;
  }
}

double fw_gap(const std::vector<double>& w, const std::vector<double>& g, std::size_t best) {
  if (std::isinf(g[best])) return kInf;
  double wg = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] > 0.0) wg += w[i] * g[i];
  return g[best] - wg;
}

}  // namespace

FwResult pairwise_frank_wolfe(const FwProblem& problem, std::vector<double> w0,
                              const FwOptions& options) {
  const std::size_t n = problem.atoms;
  if (n == 0 || w0.size() != n) throw Error(ErrorCode::DimensionMismatch, "Frank-Wolfe atoms");
  FwResult out;
  out.w = std::move(w0);
  std::vector<double> g(n), trial_w(n), trial_g(n);
  out.value = problem.eval(out.w, g);

  auto slope_at = [&](std::size_t s, std::size_t v, double gamma) {
    trial_w = out.w;
    trial_w[s] += gamma;
    trial_w[v] -= gamma;
    if (trial_w[v] < 0.0) trial_w[v] = 0.0;
    problem.eval(trial_w, trial_g);
    const double gs = trial_g[s];
    const double gv = trial_g[v];
    if (std::isinf(gs) && std::isinf(gv)) return 0.0;
    return gs - gv;
  };

  auto done = [&](std::size_t s, std::size_t v) {
    return out.gap <= options.tol && (!options.pairwise_gap || g[s] - g[v] <= options.tol);
  };

  for (std::size_t it = 0; it < options.max_iter; ++it) {
    std::size_t s = 0, v = 0;
    extreme_atoms(out.w, g, s, v);
    out.gap = fw_gap(out.w, g, s);
    out.iterations = it;
    if (done(s, v)) {
      out.converged = true;
      return out;
    }
    if (s == v) {
      out.converged = true;
      return out;
    }
    const double cap = out.w[v];
    double gamma = cap;
    const double f_cap = slope_at(s, v, cap);
    if (f_cap < 0.0) {
      // Illinois false position on the decreasing slope, bisection while an end is infinite.
      double lo = 0.0, hi = cap;
      double f_lo = std::isinf(g[s]) ? kInf : g[s] - g[v];
      double f_hi = f_cap;
      int side = 0;
      const double scale = 1e-15 * (1.0 + std::abs(g[s]) + std::abs(g[v]));
      for (int k = 0; k < 200 && hi - lo > 1e-17 * (1.0 + cap); ++k) {
        double mid = 0.5 * (lo + hi);
        if (std::isfinite(f_lo) && std::isfinite(f_hi)) {
          mid = lo + (hi - lo) * f_lo / (f_lo - f_hi);
          if (!(mid > lo && mid < hi)) mid = 0.5 * (lo + hi);
        }
        const double f_mid = slope_at(s, v, mid);
        if (std::abs(f_mid) <= scale) {
          lo = hi = mid;
          break;
        }
        if (f_mid > 0.0) {
          lo = mid;
          f_lo = f_mid;
          if (side == 1) f_hi *= 0.5;
          side = 1;
        } else {
          hi = mid;
          f_hi = f_mid;
          if (side == -1) f_lo *= 0.5;
          side = -1;
        }
      }
      gamma = 0.5 * (lo + hi);
    }
    if (gamma <= 0.0) {
      out.converged = done(s, v);
      return out;
    }
    out.w[s] += gamma;
    out.w[v] = gamma >= cap ? 0.0 : out.w[v] - gamma;
    out.value = problem.eval(out.w, g);
  }
  std::size_t s = 0, v = 0;
  extreme_atoms(out.w, g, s, v);
  out.gap = fw_gap(out.w, g, s);
  out.iterations = options.max_iter;
  out.converged = done(s, v);
  return out;
}

}  // namespace maxent::numeric
