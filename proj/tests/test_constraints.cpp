#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "maxent/constraints.hpp"
#include "maxent/random.hpp"
#include "oracles.hpp"

using namespace maxent;

namespace {

const SampleSpace kSpace = SampleSpace::indexed(3);

GammaTau ternary_gamma(double tau) { return GammaTau(kSpace, oracle::ternary(), {tau}); }

bool same(const Distribution& p, std::vector<double> w) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (std::abs(p[i] - w[i]) > 1e-12) return false;
  return true;
}

}  // namespace

TEST_CASE("feasibility") {
  CHECK(feasible(ternary_gamma(0.5)));
  CHECK_FALSE(feasible(ternary_gamma(1.5)));
  CHECK(feasible(ternary_gamma(1.0)));
  CHECK(oracle::code_of([] { vertices(ternary_gamma(1.5)); }) == ErrorCode::Infeasible);
  CHECK(oracle::code_of([] { GammaTau(kSpace, Statistic::scalar({0, 0, 0}), {1.0}); }) ==
        ErrorCode::Infeasible);
  CHECK(oracle::code_of([] { GammaTau(kSpace, Statistic::scalar({0, 1}), {0.0}); }) ==
        ErrorCode::DimensionMismatch);
  CHECK(oracle::code_of([] { GammaTau(kSpace, oracle::ternary(), {0.0, 1.0}); }) ==
        ErrorCode::DimensionMismatch);
}

TEST_CASE("vertices of one-moment polytopes") {
  const auto v0 = vertices(ternary_gamma(0.0));
  REQUIRE(v0.size() == 2);
  CHECK(same(v0.vertices[0], {0, 1, 0}));
  CHECK(same(v0.vertices[1], {0.5, 0, 0.5}));
  CHECK(v0.maximal_support() == std::vector<std::size_t>{0, 1, 2});

  const auto v75 = vertices(ternary_gamma(0.75));
  REQUIRE(v75.size() == 2);
  CHECK(same(v75.vertices[0], {0, 0.25, 0.75}));
  CHECK(same(v75.vertices[1], {0.125, 0, 0.875}));

  const auto v1 = vertices(ternary_gamma(1.0));
  REQUIRE(v1.size() == 1);
  CHECK(same(v1.vertices[0], {0, 0, 1}));
  CHECK(v1.maximal_support() == std::vector<std::size_t>{2});
}

TEST_CASE("vertices of random one-moment polytopes") {
  Rng rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 6;
    std::vector<double> t(n);
    for (double& v : t) v = std::round(u(rng) * 4) / 4;
    const Statistic st = Statistic::scalar(t);
    const auto p = random_distribution(rng, n, 0.2);
    const double tau = moment(p, st)[0];
    const GammaTau g(SampleSpace::indexed(n), st, {tau});
    const auto vs = vertices(g);
    REQUIRE_FALSE(vs.empty());
    for (std::size_t i = 0; i < vs.size(); ++i) {
      CHECK(contains(g, vs.vertices[i]));
      CHECK(vs.supports[i].size() <= 2);
    }
    // Any member's support lies inside the union of vertex supports.
    const auto all = vs.maximal_support();
    for (std::size_t x : p.support()) CHECK(std::find(all.begin(), all.end(), x) != all.end());
  }
}

TEST_CASE("two-moment polytope") {
  const Statistic t(2, 4, {0, 1, 2, 3, 0, 1, 4, 9});
  const GammaTau g(SampleSpace::indexed(4), t, {1.5, 3.0});
  const auto vs = vertices(g);
  CHECK(vs.size() >= 2);
  for (const auto& v : vs.vertices) CHECK(contains(g, v));
  CHECK(hull_interior(t, std::vector<double>{1.5, 3.0}) == HullPosition::Interior);
  CHECK(hull_interior(t, std::vector<double>{1.5, 2.25}) == HullPosition::Outside);
}

TEST_CASE("membership") {
  CHECK(contains(ternary_gamma(-0.8), validate_distribution({0.9, 0, 0.1})));
  CHECK(contains(ternary_gamma(0.0), Distribution::uniform(3)));
  CHECK_FALSE(contains(ternary_gamma(0.5), Distribution::uniform(3)));
}

TEST_CASE("hull position") {
  const auto t = oracle::ternary();
  CHECK(hull_interior(t, std::vector<double>{0.9}) == HullPosition::Interior);
  CHECK(hull_interior(t, std::vector<double>{1.0}) == HullPosition::Boundary);
  CHECK(hull_interior(t, std::vector<double>{-1.01}) == HullPosition::Outside);
  CHECK(to_string(HullPosition::Boundary) == "boundary");
}

TEST_CASE("enumeration limits") {
  const std::size_t n = 25;
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<double>(i);
  const GammaTau g(SampleSpace::indexed(n), Statistic::scalar(t), {3.5});
  CHECK(oracle::code_of([&] { vertices(g); }) == ErrorCode::CombinatorialBlowup);
  EnumerationLimits wide;
  wide.max_outcomes = 30;
  CHECK(vertices(g, wide).size() == 4 * 21);
}
