#include "tmdyn/error.hpp"

namespace tmdyn {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kNonPSDGeometry: return "NonPSDGeometry";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kDegenerateConstants: return "DegenerateConstants";
    case ErrorCode::kUnsupportedSetting: return "UnsupportedSetting";
    case ErrorCode::kStepTooLarge: return "StepTooLarge";
    case ErrorCode::kDivergenceDetected: return "DivergenceDetected";
    case ErrorCode::kDivergentConfig: return "DivergentConfig";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, std::string field, const std::string& message)
    : std::runtime_error(field.empty() ? message : field + ": " + message),
      code_(code),
      field_(std::move(field)) {}

}  // namespace tmdyn
