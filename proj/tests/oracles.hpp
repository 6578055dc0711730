#pragma once

// Closed-form and brute-force reference values, written independently of the
// library solvers.

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "maxent/core.hpp"
#include "maxent/error.hpp"

namespace oracle {

template <class Fn>
maxent::ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const maxent::Error& e) {
    return e.code();
  }
  return maxent::ErrorCode::ParseError;  // sentinel: nothing was thrown
}

/// Outcomes -1, 0, 1 with T(x) = x.
inline maxent::Statistic ternary() { return maxent::Statistic::scalar({-1.0, 0.0, 1.0}); }

struct Row {
  std::array<double, 3> p;
  double h;
  double beta0;
  double beta1;
};

/// Brier score on {-1, 0, 1}, T = x.
inline Row brier(double tau) {
  constexpr double two_thirds = 2.0 / 3.0;
  if (tau <= -two_thirds) {
    if (tau == -1.0) return {{1, 0, 0}, 0.0, 2.0, 2.0};
    return {{-tau, 1 + tau, 0}, -2 * tau * (1 + tau), 2 * tau * tau, -2 - 4 * tau};
  }
  if (tau >= two_thirds) {
    if (tau == 1.0) return {{0, 0, 1}, 0.0, 2.0, -2.0};
    return {{0, 1 - tau, tau}, 2 * tau * (1 - tau), 2 * tau * tau, 2 - 4 * tau};
  }
  return {{1.0 / 3 - tau / 2, 1.0 / 3, 1.0 / 3 + tau / 2},
          two_thirds - tau * tau / 2,
          two_thirds + tau * tau / 2,
          -tau};
}

struct ZeroOneRow {
  std::array<double, 3> p;
  std::array<double, 3> zeta;
  double h;
  double beta0;
  double beta1;
  bool linear;
};

/// Zero-one loss on {-1, 0, 1}, T = x, tau >= 0 (negative tau by reflection).
inline ZeroOneRow zero_one(double tau) {
  if (tau < 0) {
    auto r = zero_one(-tau);
    std::reverse(r.p.begin(), r.p.end());
    std::reverse(r.zeta.begin(), r.zeta.end());
    r.beta1 = -r.beta1;
    return r;
  }
  if (tau == 0.0) return {{1.0 / 3, 1.0 / 3, 1.0 / 3}, {1.0 / 3, 1.0 / 3, 1.0 / 3}, 2.0 / 3, 2.0 / 3, 0.0, true};
  if (tau < 0.5)
    return {{(1 - 2 * tau) / 3, (1 + tau) / 3, (1 + tau) / 3}, {0, 1.0 / 3, 2.0 / 3},
            (2 - tau) / 3, 2.0 / 3, -1.0 / 3, true};
  if (tau == 0.5) return {{0, 0.5, 0.5}, {0, 1.0 / 3, 2.0 / 3}, 0.5, 2.0 / 3, -1.0 / 3, true};
  if (tau < 1.0) return {{0, 1 - tau, tau}, {0, 0, 1}, 1 - tau, 1.0, -1.0, false};
  return {{0, 0, 1}, {0, 0, 1}, 0.0, 1.0, -1.0, false};
}

/// Log loss with counting measure on a finite set of values: the tilted
/// family q(x) ~ exp(-b v(x)) whose mean is tau, found by bisection on b.
struct LogRow {
  std::vector<double> p;
  double h;
  double beta;
  double kappa;
};

inline LogRow log_counting(const std::vector<double>& v, double tau) {
  auto mean_at = [&](double b) {
    double z = 0, m = 0;
    for (double x : v) {
      const double w = std::exp(-b * x);
      z += w;
      m += w * x;
    }
    return m / z;
  };
  double lo = -200, hi = 200;  // mean is decreasing in b
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mean_at(mid) > tau ? lo : hi) = mid;
  }
  const double b = 0.5 * (lo + hi);
  double z = 0;
  for (double x : v) z += std::exp(-b * x);
  LogRow r;
  r.beta = b;
  r.kappa = std::log(z);
  r.h = 0;
  for (double x : v) {
    const double q = std::exp(-b * x) / z;
    r.p.push_back(q);
    if (q > 0) r.h -= q * std::log(q);
  }
  return r;
}

/// Brute-force max of H over a fine grid of the polytope for a three-point
/// space with T = x.
template <class Entropy>
double grid_max_entropy(Entropy&& h, double tau, int steps = 20000) {
  // p(-1) = a, p(1) = a + tau, p(0) = 1 - 2a - tau, with all entries >= 0.
  const double lo = std::max(0.0, -tau);
  const double hi = (1 - tau) / 2;
  double best = -INFINITY;
  for (int i = 0; i <= steps; ++i) {
    const double a = lo + (hi - lo) * i / steps;
    const double p0 = 1 - 2 * a - tau;
    if (p0 < -1e-15) continue;
    best = std::max(best, h(std::array<double, 3>{a, std::max(p0, 0.0), a + tau}));
  }
  return best;
}

}  // namespace oracle
