#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tmdyn {

enum class ErrorCode {
  kOutOfRange,
  kNonPSDGeometry,
  kDomainError,
  kConfigError,
  kDegenerateConstants,
  kUnsupportedSetting,
  kStepTooLarge,
  kDivergenceDetected,
  kDivergentConfig,
  kDimensionMismatch,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries a code and, where one applies,
// the name of the offending config field.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string field, const std::string& message);
  Error(ErrorCode code, const std::string& message) : Error(code, {}, message) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorCode code_;
  std::string field_;
};

}  // namespace tmdyn
