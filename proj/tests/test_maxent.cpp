#include <cmath>
#include <numbers>

#include "doctest.h"
#include "maxent/divergence.hpp"
#include "maxent/maxent.hpp"
#include "oracles.hpp"

using namespace maxent;

namespace {

const SampleSpace kSpace = SampleSpace::indexed(3);

GammaTau ternary_gamma(double tau) { return GammaTau(kSpace, oracle::ternary(), {tau}); }

std::vector<double> grid_points() {
  std::vector<double> g;
  for (int i = -20; i <= 20; ++i) g.push_back(i / 20.0);
  g.push_back(-2.0 / 3);
  g.push_back(2.0 / 3);
  return g;
}

double loss_at(const LossModel& m, const Distribution& p, const Act& a) {
  return expected_loss(p, a, m).value();
}

}  // namespace

TEST_CASE("brier maximizers match the closed forms") {
  for (double tau : grid_points()) {
    CAPTURE(tau);
    const auto sp = solve_brier(ternary_gamma(tau));
    const auto want = oracle::brier(tau);
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(sp.p_star[i] - want.p[i]) <= 1e-9);
    CHECK(std::abs(sp.value - want.h) <= 1e-9);
    REQUIRE(sp.dual);
    CHECK(std::abs(sp.dual->beta0 - want.beta0) <= 1e-9);
    CHECK(std::abs(sp.dual->beta[0] - want.beta1) <= 1e-9);
    CHECK(std::abs(sp.bayes_margin) <= 1e-8);
    CHECK(sp.worst_margin <= 1e-7);
    CHECK(sp.flags.is_regular);
    CHECK(sp.flags.is_linear == (std::abs(tau) <= 2.0 / 3 + 1e-12));
    CHECK(sp.flags.tau_interior == (std::abs(tau) < 1));
    CHECK(sp.flags.is_equalizer ==
          (std::abs(tau) <= 2.0 / 3 + 1e-12 || std::abs(tau) == 1.0));
  }
}

TEST_CASE("brier outside the linear range is not an equalizer") {
  const auto model = brier_model(kSpace);
  const auto sp = solve_brier(ternary_gamma(0.75));
  const auto v = validate_distribution({0.125, 0.0, 0.875});
  CHECK(sp.value - loss_at(*model, v, sp.zeta_star) == doctest::Approx(0.0625).epsilon(1e-12));
  CHECK(std::abs(sp.worst_margin) <= 1e-12);
  CHECK(sp.equalizer_spread == doctest::Approx(0.0625).epsilon(1e-12));
  CHECK_FALSE(sp.flags.is_equalizer);
}

TEST_CASE("zero-one maximizers and robust acts") {
  for (double tau : grid_points()) {
    CAPTURE(tau);
    const auto sp = solve_zero_one(ternary_gamma(tau));
    const auto want = oracle::zero_one(tau);
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(sp.p_star[i] - want.p[i]) <= 1e-9);
    CHECK(std::abs(sp.value - want.h) <= 1e-9);
    CHECK(std::abs(sp.bayes_margin) <= 1e-8);
    CHECK(sp.worst_margin <= 1e-7);
    REQUIRE(sp.dual);
    CHECK(sp.flags.is_regular);
    CHECK(sp.flags.is_linear == want.linear);
    if (std::abs(tau) < 1) {
      for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(sp.zeta_star.payload[i] - want.zeta[i]) <= 1e-9);
      CHECK(std::abs(sp.dual->beta0 - want.beta0) <= 1e-9);
      CHECK(std::abs(sp.dual->beta[0] - want.beta1) <= 1e-9);
    }
  }
}

TEST_CASE("zero-one act family at tau = 1/2") {
  const auto sp = solve_zero_one(ternary_gamma(0.5));
  REQUIRE(sp.family);
  CHECK(sp.family->lower[0] == doctest::Approx(0.0));
  CHECK(sp.family->upper[0] == doctest::Approx(0.0));
  CHECK(sp.family->lower[1] <= 1e-9);
  CHECK(sp.family->upper[1] <= 1.0 / 3 + 1e-9);
  CHECK(sp.family->upper[1] == doctest::Approx(1.0 / 3));
  CHECK(std::abs(sp.zeta_star.payload[1] - 1.0 / 3) <= 1e-9);
  CHECK(std::abs(sp.zeta_star.payload[2] - 2.0 / 3) <= 1e-9);
}

TEST_CASE("zero-one inside (0, 1/2) has a unique robust act") {
  const auto sp = solve_zero_one(ternary_gamma(0.25));
  CHECK_FALSE(sp.family);
  CHECK(sp.flags.is_equalizer);
}

TEST_CASE("log maximizers follow the exponential family") {
  const auto mu = BaseMeasure::counting(3);
  for (int i = -18; i <= 18; ++i) {
    const double tau = i / 20.0;
    CAPTURE(tau);
    const auto sp = solve_log(ternary_gamma(tau), mu);
    const auto want = oracle::log_counting({-1, 0, 1}, tau);
    for (std::size_t x = 0; x < 3; ++x) CHECK(std::abs(sp.p_star[x] - want.p[x]) <= 1e-9);
    CHECK(std::abs(sp.value - want.h) <= 1e-10);
    CHECK(std::abs(moment(sp.p_star, oracle::ternary())[0] - tau) <= 1e-8);
    CHECK(sp.gap <= 1e-10);
    REQUIRE(sp.dual);
    CHECK(std::abs(sp.dual->beta[0] - want.beta) <= 1e-8);
    CHECK(std::abs(sp.dual->beta0 - want.kappa) <= 1e-8);
    CHECK(sp.flags.is_linear);
    CHECK(sp.flags.is_equalizer);
  }
}

TEST_CASE("log reference values") {
  const auto mu = BaseMeasure::counting(3);
  const auto zero = solve_log(ternary_gamma(0.0), mu);
  CHECK(std::abs(zero.value - std::log(3.0)) <= 1e-12);

  const auto half = solve_log(ternary_gamma(0.5), mu);
  CHECK(half.value == doctest::Approx(0.901234700634161).epsilon(1e-12));
  CHECK(half.dual->beta[0] == doctest::Approx(-0.834115194352401).epsilon(1e-9));
  CHECK(half.dual->beta0 == doctest::Approx(1.318292297810362).epsilon(1e-9));
  CHECK(half.p_star[0] == doctest::Approx(0.116204060378001).epsilon(1e-9));
  CHECK(half.p_star[1] == doctest::Approx(0.267591879243998).epsilon(1e-9));
  CHECK(half.p_star[2] == doctest::Approx(0.616204060378001).epsilon(1e-9));

  const auto far = solve_log(ternary_gamma(0.9), mu);
  CHECK(far.dual->beta[0] == doctest::Approx(-2.376298462730480).epsilon(1e-8));

  for (double tau : {-1.0, 1.0}) {
    const auto edge = solve_log(ternary_gamma(tau), mu);
    CHECK(edge.value == 0.0);
    CHECK_FALSE(edge.flags.is_regular);
    CHECK_FALSE(edge.flags.tau_interior);
    CHECK(edge.flags.is_equalizer);
  }
}

TEST_CASE("log with a non-uniform base measure matches the tilted family") {
  const BaseMeasure mu({1.0, 2.0, 0.5});
  const auto sp = solve_log(ternary_gamma(0.2), mu);
  // Density q = exp(-kappa - beta t) against mu; check the moment and normalization.
  double total = 0, mean = 0;
  for (std::size_t x = 0; x < 3; ++x) {
    const double t = static_cast<double>(x) - 1.0;
    const double p = mu[x] * std::exp(-sp.dual->beta0 - sp.dual->beta[0] * t);
    CHECK(p == doctest::Approx(sp.p_star[x]).epsilon(1e-10));
    total += p;
    mean += p * t;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mean == doctest::Approx(0.2).epsilon(1e-10));
}

TEST_CASE("solvers agree with brute-force maximization on the polytope") {
  const auto brier = brier_model(kSpace);
  const auto zo = zero_one_model(kSpace);
  const auto lg = log_model(kSpace, BaseMeasure::counting(3));
  for (double tau : {-0.7, -0.3, 0.1, 0.45, 0.8}) {
    CAPTURE(tau);
    for (const auto* m : {brier.get(), zo.get(), lg.get()}) {
      auto h = [&](const std::array<double, 3>& p) {
        return m->entropy(renormalized(std::vector<double>(p.begin(), p.end())));
      };
      const double grid = oracle::grid_max_entropy(h, tau, 200000);
      const double value = solve(*m, ternary_gamma(tau)).value;
      CHECK(value >= grid - 1e-9);
      CHECK(value <= grid + 1e-5);
    }
  }
}

TEST_CASE("generic solvers reproduce the specialized ones") {
  const auto zo = zero_one_model(kSpace);
  const auto lg = log_model(kSpace, BaseMeasure::counting(3));
  const auto sq = bregman_model(kSpace, BaseMeasure::counting(3), ConvexGenerator::square(0.0));
  for (double tau : {-0.9, -0.5, 0.0, 0.3, 0.7}) {
    CAPTURE(tau);
    const auto g = ternary_gamma(tau);
    const auto lp = solve_generic(*zo, g);
    CHECK(lp.solver == "generic_lp");
    CHECK(lp.value == doctest::Approx(solve_zero_one(g).value).epsilon(1e-9));
    CHECK(std::abs(lp.bayes_margin) <= 1e-8);
    CHECK(lp.worst_margin <= 1e-7);

    const auto fw = solve_generic(*lg, g, {1e-12, 100000});
    CHECK(fw.solver == "generic_fw");
    CHECK(fw.converged);
    CHECK(std::abs(fw.value - solve_log(g, BaseMeasure::counting(3)).value) <= 1e-9);

    // psi(s) = s^2 gives the Brier score up to a constant, so the maximizers coincide.
    const auto bs = solve_generic(*sq, g, {1e-12, 100000});
    const auto br = solve_brier(g);
    for (std::size_t x = 0; x < 3; ++x) CHECK(std::abs(bs.p_star[x] - br.p_star[x]) <= 1e-5);
  }
}

TEST_CASE("specific entropy is -inf off the hull") {
  const auto model = brier_model(kSpace);
  const double out[] = {1.5};
  CHECK(specific_entropy(*model, oracle::ternary(), out) == -INFINITY);
  const double in[] = {0.0};
  CHECK(specific_entropy(*model, oracle::ternary(), in) == doctest::Approx(2.0 / 3));
}

TEST_CASE("two moment constraints") {
  // Outcomes 0..3 with T = (x, x^2).
  const Statistic t(2, 4, {0, 1, 2, 3, 0, 1, 4, 9});
  const GammaTau g(SampleSpace::indexed(4), t, {1.5, 3.0});
  const auto lg = log_model(SampleSpace::indexed(4), BaseMeasure::counting(4));
  const auto sp = solve(*lg, g);
  const auto m = moment(sp.p_star, t);
  CHECK(std::abs(m[0] - 1.5) <= 1e-8);
  CHECK(std::abs(m[1] - 3.0) <= 1e-8);
  CHECK(sp.gap <= 1e-10);
  const auto fw = solve_generic(*lg, g, {1e-12, 100000});
  CHECK(std::abs(fw.value - sp.value) <= 1e-9);

  const auto br = brier_model(SampleSpace::indexed(4));
  const auto bs = solve(*br, g);
  CHECK(std::abs(bs.bayes_margin) <= 1e-8);
  CHECK(bs.worst_margin <= 1e-7);
  const auto bf = solve_generic(*br, g, {1e-12, 100000});
  CHECK(std::abs(bf.value - bs.value) <= 1e-8);
}

TEST_CASE("natural tilt of the log score is the log-partition function") {
  const auto lg = log_model(kSpace, BaseMeasure::counting(3));
  const double beta[] = {1.0};
  const auto tilt = natural_tilt(*lg, oracle::ternary(), beta);
  CHECK(tilt.converged);
  CHECK(tilt.chi == doctest::Approx(1.407605964444380).epsilon(1e-11));
  REQUIRE(tilt.kappa_residual);
  CHECK(*tilt.kappa_residual <= 1e-10);
  CHECK(log_partition(BaseMeasure::counting(3), oracle::ternary(), beta) ==
        doctest::Approx(1.407605964444380).epsilon(1e-14));
}

TEST_CASE("natural tilt of the zero-one loss") {
  const auto zo = zero_one_model(kSpace);
  // chi(0) = max H = 2/3 at the uniform distribution.
  const double zero[] = {0.0};
  const auto t0 = natural_tilt(*zo, oracle::ternary(), zero);
  CHECK(t0.chi == doctest::Approx(2.0 / 3).epsilon(1e-12));
  CHECK(t0.q[1] == doctest::Approx(1.0 / 3));
  // Brute force over a triangular grid of the simplex.
  for (double b : {-2.0, -0.5, 0.2, 1.3}) {
    const double beta[] = {b};
    const auto t = natural_tilt(*zo, oracle::ternary(), beta);
    double best = -INFINITY;
    const int steps = 300;
    for (int i = 0; i <= steps; ++i)
      for (int j = 0; i + j <= steps; ++j) {
        const double p0 = double(i) / steps, p1 = double(j) / steps, p2 = 1 - p0 - p1;
        const double h = 1 - std::max({p0, p1, p2});
        best = std::max(best, h - b * (p2 - p0));
      }
    CHECK(t.chi >= best - 1e-9);
    CHECK(t.chi <= best + 1e-2);
  }
}

TEST_CASE("conjugacy between h and chi") {
  const auto grid = linear_grid(-0.9, 0.9, 18);
  const auto betas = linear_grid(-4, 4, 399);
  const auto br = brier_model(kSpace);
  const auto rep = conjugacy_check(*br, oracle::ternary(), grid, betas);
  CHECK(rep.lower_bound_violations == 0);
  CHECK(rep.max_grid_residual <= 1e-3);
  CHECK(rep.max_matched_residual <= 1e-8);
  CHECK(rep.passed());
}

TEST_CASE("traces are concave with monotone beta, and beta is the slope of h") {
  const auto grid = linear_grid(-1, 1, 40);
  const auto br = brier_model(kSpace);
  const auto zo = zero_one_model(kSpace);
  const auto lg = log_model(kSpace, BaseMeasure::counting(3));
  for (const auto* m : {br.get(), zo.get(), lg.get()}) {
    CAPTURE(m->name());
    const auto tr = trace_family(*m, oracle::ternary(), grid);
    CHECK(tr.violations.empty());
    for (const auto& r : tr.rows) CHECK(r.error.empty());
    const auto d = beta_derivative_check(*m, tr);
    CHECK(d.passed);
    CHECK(d.rows.size() >= 39);
  }
}

TEST_CASE("zero-one kink at tau = 0") {
  const auto zo = zero_one_model(kSpace);
  const auto tr = trace_family(*zo, oracle::ternary(), {{0.0}});
  const auto d = beta_derivative_check(*zo, tr);
  REQUIRE(d.rows.size() == 1);
  CHECK(d.rows[0].kink);
  CHECK(d.rows[0].left_slope == doctest::Approx(1.0 / 3).epsilon(1e-6));
  CHECK(d.rows[0].right_slope == doctest::Approx(-1.0 / 3).epsilon(1e-6));
  CHECK(d.rows[0].passed);
}

TEST_CASE("support scan with a non-robust candidate") {
  const auto br = brier_model(kSpace);
  const auto tr = trace_family(*br, oracle::ternary(), linear_grid(-1, 1, 40));
  const auto p = validate_distribution({0.9, 0.0, 0.1});
  const auto scan = support_scan(*br, tr, p);
  CHECK(std::abs(scan.support[4] - -0.24) <= 1e-9);  // tau = -0.8
  CHECK(std::abs(scan.max_support - -0.195) <= 1e-9);
  CHECK(scan.argmax_tau == doctest::Approx(-0.95));
  const auto& z = tr.rows[scan.argmax_row].point->zeta_star.payload;
  CHECK(z[0] == doctest::Approx(0.95));
  CHECK(z[1] == doctest::Approx(0.05));
}

TEST_CASE("relative tilts: minimum discrepancy from a prior under a moment penalty") {
  const auto lg = log_model(kSpace, BaseMeasure::counting(3));
  const auto p0 = validate_distribution({0.5, 0.3, 0.2});
  const auto rows = lafferty_family(lg, p0, oracle::ternary(), {{-1.0}, {0.0}, {1.0}});
  REQUIRE(rows.size() == 3);
  CHECK(rows[2].q[0] == doctest::Approx(0.7843987617000725).epsilon(1e-9));
  CHECK(rows[2].q[1] == doctest::Approx(0.17313850686587642).epsilon(1e-9));
  CHECK(rows[2].q[2] == doctest::Approx(0.042462731434051035).epsilon(1e-9));
  // beta = 0 returns the prior itself.
  for (std::size_t x = 0; x < 3; ++x) CHECK(rows[1].q[x] == doctest::Approx(p0[x]).epsilon(1e-9));
  CHECK(rows[0].tau[0] > rows[1].tau[0]);
  CHECK(rows[1].tau[0] > rows[2].tau[0]);

  const auto sparse = validate_distribution({0.5, 0.5, 0.0});
  CHECK(oracle::code_of([&] { lafferty_family(lg, sparse, oracle::ternary(), {{1.0}}); }) ==
        ErrorCode::InfiniteReferenceLoss);
}
