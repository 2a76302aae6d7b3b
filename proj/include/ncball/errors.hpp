#pragma once

#include <stdexcept>
#include <string>

namespace ncball {

enum class ErrorCode {
  CenterNotInterior,
  DimensionMismatch,
  NormalizationFailure,
  DegenerateEigenproblem,
  ZeroPolynomial,
  SizeOverflow,
  NotRowContractive,
  DeltaOutOfRange,
  PointsNotInDeltaBall,
  SearchExhausted,
  PointIsFixed,
  ZeroC,
  WrongShape,
  HypothesisViolated,
  IsInIdeal,
  InvalidArgument,
  SchemaViolation,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool cond, ErrorCode code, const std::string& message) {
  if (!cond) fail(code, message);
}

}  // namespace ncball
