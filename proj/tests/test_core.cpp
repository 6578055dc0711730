#include <cmath>

#include "doctest.h"
#include "maxent/core.hpp"
#include "maxent/losses.hpp"

using namespace maxent;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an exception");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("sample spaces need distinct labels") {
  CHECK(SampleSpace::indexed(3).size() == 3);
  CHECK(SampleSpace({"a", "b"}).label(1) == "b");
  CHECK(code_of([] { SampleSpace({"a", "a"}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { SampleSpace(std::vector<std::string>{}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("validate_distribution") {
  const auto u = validate_distribution({1.0 / 3, 1.0 / 3, 1.0 / 3});
  CHECK(u.size() == 3);
  const auto b = validate_distribution({0.8, 0.2, 0.0});
  CHECK(b[0] == doctest::Approx(0.8));
  CHECK(b.support() == std::vector<std::size_t>{0, 1});

  SUBCASE("tiny negatives are clamped") {
    const auto p = validate_distribution({0.5, 0.5, -1e-13});
    CHECK(p[2] == 0.0);
  }
  SUBCASE("rejections") {
    CHECK(code_of([] { validate_distribution({0.5, 0.6, -0.1}); }) == ErrorCode::NegativeWeight);
    CHECK(code_of([] { validate_distribution({0.5, 0.6}); }) == ErrorCode::NotNormalized);
    const std::vector<double> w{0.5, 0.5};
    CHECK(code_of([&] { validate_distribution(w, 3); }) == ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("mixture") {
  const auto lo = Distribution::point_mass(3, 0);
  const auto hi = Distribution::point_mass(3, 2);
  const auto mid = mixture(lo, hi, 0.5);
  CHECK(mid[0] == doctest::Approx(0.5));
  CHECK(mid[1] == 0.0);
  CHECK(mid[2] == doctest::Approx(0.5));

  const auto q = mixture(lo, hi, 0.25);
  CHECK(q[0] == doctest::Approx(0.75));
  CHECK(q[2] == doctest::Approx(0.25));

  const auto p = validate_distribution({0.2, 0.3, 0.5});
  const auto same = mixture(p, p, 0.37);
  for (std::size_t i = 0; i < 3; ++i) CHECK(same[i] == doctest::Approx(p[i]).epsilon(1e-15));

  CHECK(code_of([&] { mixture(lo, hi, 1.5); }) == ErrorCode::LambdaOutOfRange);
  CHECK(code_of([&] { mixture(lo, Distribution::uniform(2), 0.5); }) ==
        ErrorCode::DimensionMismatch);
}

TEST_CASE("moment") {
  const auto t = Statistic::scalar({-1.0, 0.0, 1.0});
  CHECK(moment(Distribution::uniform(3), t)[0] == doctest::Approx(0.0));
  CHECK(moment(validate_distribution({0.8, 0.2, 0.0}), t)[0] == doctest::Approx(-0.8));
  CHECK(moment(Distribution::point_mass(3, 2), t)[0] == 1.0);
  CHECK(code_of([&] { moment(Distribution::uniform(2), t); }) == ErrorCode::DimensionMismatch);

  const Statistic two(2, 3, {-1, 0, 1, 1, 0, 1});
  const auto m = moment(validate_distribution({0.25, 0.25, 0.5}), two);
  CHECK(m[0] == doctest::Approx(0.25));
  CHECK(m[1] == doctest::Approx(0.75));
  CHECK(two.column(2) == std::vector<double>{1, 1});
}

TEST_CASE("extended reals") {
  const ExtReal inf = ExtReal::infinity();
  CHECK(scale(0.0, inf) == 0.0);
  CHECK((inf + 1.0).is_pos_inf());
  CHECK(code_of([&] { (void)(inf - inf); }) == ErrorCode::UndefinedExpectation);
  CHECK(ExtReal(1.0) < inf);
}

TEST_CASE("base measure") {
  CHECK(BaseMeasure::counting(3).total() == 3.0);
  CHECK_FALSE(BaseMeasure::counting(3).is_probability());
  CHECK(BaseMeasure({0.5, 0.5}).is_probability());
  CHECK(code_of([] { BaseMeasure({1.0, 0.0}); }) == ErrorCode::ZeroBaseMass);
}

TEST_CASE("expected loss examples") {
  const auto space = SampleSpace::indexed(3);
  const auto brier = brier_model(space);
  const auto u = Distribution::uniform(3);
  CHECK(expected_loss(u, Act{ActKind::Probability, u.vec()}, *brier).value() ==
        doctest::Approx(2.0 / 3.0));

  const auto logm = log_model(space, BaseMeasure::counting(3));
  const Act point{ActKind::Density, {1.0, 0.0, 0.0}};
  CHECK(expected_loss(Distribution::point_mass(3, 0), point, *logm).value() == 0.0);
  CHECK(expected_loss(validate_distribution({0.5, 0.5, 0.0}), point, *logm).is_pos_inf());

  CHECK(code_of([&] { expected_loss(u, Act{ActKind::Density, u.vec()}, *brier); }) ==
        ErrorCode::InvalidAct);
}
