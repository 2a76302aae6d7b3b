#include "ncball/errors.hpp"

namespace ncball {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::CenterNotInterior: return "CenterNotInterior";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NormalizationFailure: return "NormalizationFailure";
    case ErrorCode::DegenerateEigenproblem: return "DegenerateEigenproblem";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::SizeOverflow: return "SizeOverflow";
    case ErrorCode::NotRowContractive: return "NotRowContractive";
    case ErrorCode::DeltaOutOfRange: return "DeltaOutOfRange";
    case ErrorCode::PointsNotInDeltaBall: return "PointsNotInDeltaBall";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::PointIsFixed: return "PointIsFixed";
    case ErrorCode::ZeroC: return "ZeroC";
    case ErrorCode::WrongShape: return "WrongShape";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::IsInIdeal: return "IsInIdeal";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
  }
  return "UnknownError";
}

}  // namespace ncball
