#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cantor {

enum class ErrorCode {
  SpecParse,
  SpecInvalid,
  BadArgument,
  DigitOutOfRange,
  SearchExhausted,
  CapExceeded,
  NoWitness,
  WitnessInvalid,
  HypothesisViolated,
  DivergentSpec,
  ZeroFactor,
  DepthTooLarge,
  DomainMismatch,
  PrecisionExhausted,
  IoError,
};

/// Stable machine-readable code string, used in CLI reports.
constexpr std::string_view error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::SpecParse: return "SPEC_PARSE";
    case ErrorCode::SpecInvalid: return "SPEC_INVALID";
    case ErrorCode::BadArgument: return "BAD_ARGUMENT";
    case ErrorCode::DigitOutOfRange: return "DIGIT_OUT_OF_RANGE";
    case ErrorCode::SearchExhausted: return "SEARCH_EXHAUSTED";
    case ErrorCode::CapExceeded: return "CAP_EXCEEDED";
    case ErrorCode::NoWitness: return "NO_WITNESS";
    case ErrorCode::WitnessInvalid: return "WITNESS_INVALID";
    case ErrorCode::HypothesisViolated: return "HYPOTHESIS_VIOLATED";
    case ErrorCode::DivergentSpec: return "DIVERGENT_SPEC";
    case ErrorCode::ZeroFactor: return "ZERO_FACTOR";
    case ErrorCode::DepthTooLarge: return "DEPTH_TOO_LARGE";
    case ErrorCode::DomainMismatch: return "DOMAIN_MISMATCH";
    case ErrorCode::PrecisionExhausted: return "PRECISION_EXHAUSTED";
    case ErrorCode::IoError: return "IO_ERROR";
  }
  return "UNKNOWN";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace cantor
