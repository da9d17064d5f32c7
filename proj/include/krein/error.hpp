#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace krein {

enum class ErrorCode {
  NotHermitian,
  NonSquare,
  EmptyMatrix,
  Singular,
  DimensionMismatch,
  DegenerateMetric,
  NotInSubspace,
  SplitMismatch,
  SingularOperator,
  MixedMembership,
  NotRiesz,
  CountMismatch,
  LowerBoundZero,
  DefectImpossible,
  ParseError,
  SchemaError,
  BadFlags,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library. `value()` carries the offending
/// quantity where one exists (e.g. sigma_min for Singular).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<double> value = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        value_(value) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<double> value() const noexcept { return value_; }

 private:
  ErrorCode code_;
  std::optional<double> value_;
};

}  // namespace krein
