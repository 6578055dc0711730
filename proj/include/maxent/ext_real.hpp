#pragma once

#include <cmath>
#include <limits>
#include <ostream>

#include "maxent/error.hpp"

namespace maxent {

/// A real number or +infinity. Losses live in (-inf, +inf]; -inf is only
/// produced as an entropy sentinel (e.g. an empty constraint set).
class ExtReal {
 public:
  constexpr ExtReal() = default;
  constexpr ExtReal(double v) : v_(v) {}  // NOLINT(google-explicit-constructor)

  static constexpr ExtReal infinity() { return ExtReal(std::numeric_limits<double>::infinity()); }
  static constexpr ExtReal neg_infinity() {
    return ExtReal(-std::numeric_limits<double>::infinity());
  }

  constexpr double value() const { return v_; }
  bool is_finite() const { return std::isfinite(v_); }
  bool is_pos_inf() const { return std::isinf(v_) && v_ > 0; }
  bool is_neg_inf() const { return std::isinf(v_) && v_ < 0; }

  /// weight * value with the convention 0 * (+inf) = 0.
  friend ExtReal scale(double weight, ExtReal x) {
    if (weight == 0.0) return ExtReal(0.0);
    return ExtReal(weight * x.v_);
  }

  friend ExtReal operator+(ExtReal a, ExtReal b) {
    if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf()))
      throw Error(ErrorCode::UndefinedExpectation, "(+inf) + (-inf)");
    return ExtReal(a.v_ + b.v_);
  }
  friend ExtReal operator-(ExtReal a, ExtReal b) {
    if ((a.is_pos_inf() && b.is_pos_inf()) || (a.is_neg_inf() && b.is_neg_inf()))
      throw Error(ErrorCode::UndefinedExpectation, "(+inf) - (+inf)");
    return ExtReal(a.v_ - b.v_);
  }
  ExtReal& operator+=(ExtReal other) { return *this = *this + other; }

  friend constexpr bool operator==(ExtReal a, ExtReal b) { return a.v_ == b.v_; }
  friend constexpr auto operator<=>(ExtReal a, ExtReal b) { return a.v_ <=> b.v_; }

  friend std::ostream& operator<<(std::ostream& os, ExtReal x) {
    if (x.is_pos_inf()) return os << "+inf";
    if (x.is_neg_inf()) return os << "-inf";
    return os << x.v_;
  }

 private:
  double v_ = 0.0;
};

}  // namespace maxent
