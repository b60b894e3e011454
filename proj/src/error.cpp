#include "qrenyi/error.hpp"

namespace qrenyi {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::AsymmetryExceedsTolerance: return "AsymmetryExceedsTolerance";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidSpectrum: return "InvalidSpectrum";
    case ErrorCode::ZeroEntryWithNegativeExponent: return "ZeroEntryWithNegativeExponent";
    case ErrorCode::EmptyVector: return "EmptyVector";
    case ErrorCode::SingularInputForNegativeExponent: return "SingularInputForNegativeExponent";
    case ErrorCode::TypeClassMismatch: return "TypeClassMismatch";
    case ErrorCode::InvalidGaugeSpec: return "InvalidGaugeSpec";
    case ErrorCode::AlphaIsOne: return "AlphaIsOne";
    case ErrorCode::AlphaNotPositive: return "AlphaNotPositive";
    case ErrorCode::ZNotPositive: return "ZNotPositive";
    case ErrorCode::SingularCore: return "SingularCore";
    case ErrorCode::RegimeMismatch: return "RegimeMismatch";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NotSorted: return "NotSorted";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::NonPositiveEntry: return "NonPositiveEntry";
    case ErrorCode::BadExponents: return "BadExponents";
    case ErrorCode::UnsupportedAntiNorm: return "UnsupportedAntiNorm";
    case ErrorCode::LambdaOutOfRange: return "LambdaOutOfRange";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

}  // namespace qrenyi
