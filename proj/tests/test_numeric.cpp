#include <cmath>
#include <random>

#include "doctest.h"
#include "maxent/numeric.hpp"

using namespace maxent::numeric;

TEST_CASE("simplex: textbook maximization") {
  // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18  ->  (2, 6), value 36
  LinearProgram lp;
  lp.c = {-3, -5};
  lp.a_ub = {{1, 0}, {0, 2}, {3, 2}};
  lp.b_ub = {4, 12, 18};
  const auto r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.x[0] == doctest::Approx(2));
  CHECK(r.x[1] == doctest::Approx(6));
  CHECK(r.objective == doctest::Approx(-36));
}

TEST_CASE("simplex: equalities, free variables, redundancy") {
  LinearProgram lp;
  lp.c = {1, 1, 0};
  lp.a_eq = {{1, 1, 1}, {2, 2, 2}, {1, -1, 0}};
  lp.b_eq = {1, 2, 0.2};
  lp.a_ub = {{0, 0, 1}};
  lp.b_ub = {0.5};
  const auto r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.x[2] == doctest::Approx(0.5));
  CHECK(r.objective == doctest::Approx(0.5));

  LinearProgram f;
  f.c = {1};
  f.a_ub = {{-1}};
  f.b_ub = {3};  // x >= -3
  f.free = {true};
  const auto rf = solve_lp(f);
  REQUIRE(rf.status == LpStatus::Optimal);
  CHECK(rf.x[0] == doctest::Approx(-3));
}

TEST_CASE("simplex: infeasible and unbounded") {
  LinearProgram lp;
  lp.c = {1, 1};
  lp.a_eq = {{1, 1}};
  lp.b_eq = {-1};
  CHECK(solve_lp(lp).status == LpStatus::Infeasible);

  LinearProgram u;
  u.c = {-1, 0};
  u.a_ub = {{1, -1}};
  u.b_ub = {1};
  CHECK(solve_lp(u).status == LpStatus::Unbounded);
}

TEST_CASE("simplex: degenerate problem terminates") {
  // Beale's classic cycling example for the largest-coefficient rule.
  LinearProgram lp;
  lp.c = {-0.75, 150, -0.02, 6};
  lp.a_ub = {{0.25, -60, -0.04, 9}, {0.5, -90, -0.02, 3}, {0, 0, 1, 0}};
  lp.b_ub = {0, 0, 1};
  const auto r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == doctest::Approx(-0.05));
}

TEST_CASE("projection onto the simplex") {
  ProjectionProblem qp;
  qp.target = {0.9, 0.4, -0.3};
  qp.a_eq = {{1, 1, 1}};
  qp.b_eq = {1};
  qp.a_in = {{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}};
  qp.b_in = {0, 0, 0};
  const auto r = project(qp);
  REQUIRE(r.feasible);
  CHECK(r.x[0] == doctest::Approx(0.75));
  CHECK(r.x[1] == doctest::Approx(0.25));
  CHECK(r.x[2] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("projection agrees with brute force on random boxes") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    // box [-1,1]^3 plus one equality: projection is clamp-then-shift, checked by KKT.
    ProjectionProblem qp;
    qp.target = {u(rng), u(rng), u(rng)};
    qp.a_in = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, 0, 0}, {0, -1, 0}, {0, 0, -1}};
    qp.b_in = {1, 1, 1, 1, 1, 1};
    qp.a_eq = {{1, 1, 1}};
    qp.b_eq = {0.5};
    const auto r = project(qp);
    REQUIRE(r.feasible);
    // KKT: x - target = -lambda_eq * 1 - (box multipliers); on free coordinates the
    // shift is common.
    double shift = NAN;
    for (int i = 0; i < 3; ++i) {
      const double xi = r.x[i];
      CHECK(xi <= 1 + 1e-10);
      CHECK(xi >= -1 - 1e-10);
      if (std::abs(std::abs(xi) - 1) > 1e-9) {
        const double s = qp.target[i] - xi;
        if (std::isnan(shift)) shift = s;
        CHECK(s == doctest::Approx(shift).epsilon(1e-9));
      }
    }
    CHECK(r.x[0] + r.x[1] + r.x[2] == doctest::Approx(0.5));
  }
}

TEST_CASE("projection reports infeasibility") {
  ProjectionProblem qp;
  qp.target = {0, 0};
  qp.a_eq = {{1, 1}};
  qp.b_eq = {3};
  qp.a_in = {{1, 0}, {0, 1}};
  qp.b_in = {1, 1};
  CHECK_FALSE(project(qp).feasible);
}

TEST_CASE("least squares returns the minimum-norm solution") {
  const auto r = least_squares({{1, 1}}, std::vector<double>{2});
  CHECK(r.rank == 1);
  CHECK(r.x[0] == doctest::Approx(1));
  CHECK(r.x[1] == doctest::Approx(1));
  CHECK(matrix_rank({{1, 2}, {2, 4}}) == 1);
}

TEST_CASE("pairwise Frank-Wolfe maximizes a concave quadratic on the simplex") {
  // f(w) = -||w - c||^2 with c inside the simplex -> optimum w = c
  const std::vector<double> c{0.2, 0.5, 0.3};
  FwProblem prob;
  prob.atoms = 3;
  prob.eval = [&](std::span<const double> w, std::vector<double>& g) {
    double f = 0;
    for (int i = 0; i < 3; ++i) {
      f -= (w[i] - c[i]) * (w[i] - c[i]);
      g[i] = -2 * (w[i] - c[i]);
    }
    return f;
  };
  const auto r = pairwise_frank_wolfe(prob, {1.0 / 3, 1.0 / 3, 1.0 / 3}, {1e-12, 10000});
  CHECK(r.converged);
  for (int i = 0; i < 3; ++i) CHECK(r.w[i] == doctest::Approx(c[i]).epsilon(1e-6));

  // optimum on a face: c outside the simplex
  const std::vector<double> d{0.8, 0.6, -0.4};
  prob.eval = [&](std::span<const double> w, std::vector<double>& g) {
    double f = 0;
    for (int i = 0; i < 3; ++i) {
      f -= (w[i] - d[i]) * (w[i] - d[i]);
      g[i] = -2 * (w[i] - d[i]);
    }
    return f;
  };
  const auto s = pairwise_frank_wolfe(prob, {1.0 / 3, 1.0 / 3, 1.0 / 3}, {1e-12, 10000});
  CHECK(s.converged);
  CHECK(s.w[0] == doctest::Approx(0.6));
  CHECK(s.w[1] == doctest::Approx(0.4));
  CHECK(s.w[2] == 0.0);
}
