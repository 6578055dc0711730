#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace maxent {

enum class ErrorCode {
  NegativeWeight,
  NotNormalized,
  DimensionMismatch,
  LambdaOutOfRange,
  UndefinedExpectation,
  ZeroBaseMass,
  InvalidGenerator,
  InvalidAct,
  ProprietyViolation,
  InfiniteReferenceLoss,
  Infeasible,
  NewtonDivergence,
  MaxIterExceeded,
  CombinatorialBlowup,
  SimplexCycle,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception type thrown by every module of the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace maxent
