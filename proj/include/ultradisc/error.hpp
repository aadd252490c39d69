#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ultradisc {

enum class ErrorCode {
  kPrecisionIndeterminate,
  kDivisionByZero,
  kNotIntegral,
  kEmptyMap,
  kResonantMultiplier,
  kRootOfUnity,
  kDegenerateInput,
  kWitnessNotFound,
  kParseError,
  kInvalidArgument,
  kInvariantViolation,
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kPrecisionIndeterminate: return "PrecisionIndeterminate";
    case ErrorCode::kDivisionByZero: return "DivisionByZero";
    case ErrorCode::kNotIntegral: return "NotIntegral";
    case ErrorCode::kEmptyMap: return "EmptyMap";
    case ErrorCode::kResonantMultiplier: return "ResonantMultiplier";
    case ErrorCode::kRootOfUnity: return "RootOfUnity";
    case ErrorCode::kDegenerateInput: return "DegenerateInput";
    case ErrorCode::kWitnessNotFound: return "WitnessNotFound";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a stable code; the CLI maps
/// codes onto exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t column, const std::string& message)
      : Error(ErrorCode::kParseError,
              "column " + std::to_string(column) + ": " + message),
        column_(column),
        detail_(message) {}

  std::size_t column() const noexcept { return column_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t column_;
  std::string detail_;
};

}  // namespace ultradisc
