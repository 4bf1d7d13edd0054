#include "opchain/core/error.hpp"

namespace opchain {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnboundedRow: return "UnboundedRow";
    case ErrorCode::ZeroFactor: return "ZeroFactor";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::ScalarIntermediate: return "ScalarIntermediate";
    case ErrorCode::NotInKernel: return "NotInKernel";
    case ErrorCode::RangeNotAnnihilated: return "RangeNotAnnihilated";
    case ErrorCode::UnsatisfiableStep: return "UnsatisfiableStep";
    case ErrorCode::DependencyViolation: return "DependencyViolation";
    case ErrorCode::ZeroCoefficients: return "ZeroCoefficients";
    case ErrorCode::NoWitnessIndex: return "NoWitnessIndex";
    case ErrorCode::ExpansionMismatch: return "ExpansionMismatch";
    case ErrorCode::WitnessBelowBound: return "WitnessBelowBound";
    case ErrorCode::NotAnEigenvalue: return "NotAnEigenvalue";
    case ErrorCode::RealEigenvalue: return "RealEigenvalue";
    case ErrorCode::SingularR: return "SingularR";
    case ErrorCode::IntertwiningFails: return "IntertwiningFails";
    case ErrorCode::ZeroTransport: return "ZeroTransport";
    case ErrorCode::OddDimension: return "OddDimension";
    case ErrorCode::NotIdempotent: return "NotIdempotent";
    case ErrorCode::ScalarProjection: return "ScalarProjection";
    case ErrorCode::DoesNotCommute: return "DoesNotCommute";
    case ErrorCode::PreconditionFails: return "PreconditionFails";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message,
             std::optional<std::size_t> index)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      index_(index) {}

}  // namespace opchain
