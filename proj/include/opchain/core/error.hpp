#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace opchain {

enum class ErrorCode {
  // core-ops
  UnboundedRow,
  ZeroFactor,
  OutOfRange,
  InvalidArgument,
  // chains
  InvalidSpec,
  BudgetExhausted,
  ScalarIntermediate,
  NotInKernel,
  RangeNotAnnihilated,
  // ambrozie
  UnsatisfiableStep,
  DependencyViolation,
  ZeroCoefficients,
  NoWitnessIndex,
  ExpansionMismatch,
  WitnessBelowBound,
  // findim
  NotAnEigenvalue,
  RealEigenvalue,
  SingularR,
  IntertwiningFails,
  ZeroTransport,
  OddDimension,
  NotIdempotent,
  ScalarProjection,
  DoesNotCommute,
  PreconditionFails,
  // io
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Single exception type for the library. `index()` carries the offending basis
// index or coordinate when the failure is tied to one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> index = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> index_;
};

}  // namespace opchain
