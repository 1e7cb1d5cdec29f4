#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cshrink {

enum class ErrorCode {
  InvalidGeometry,
  EmptySet,
  NonpositiveArea,
  AreaExceedsDomain,
  OutOfRegime,
  BadConfig,
  OutOfRange,
  DegenerateDomain,
  NotCritical,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidGeometry: return "InvalidGeometry";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::NonpositiveArea: return "NonpositiveArea";
    case ErrorCode::AreaExceedsDomain: return "AreaExceedsDomain";
    case ErrorCode::OutOfRegime: return "OutOfRegime";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::DegenerateDomain: return "DegenerateDomain";
    case ErrorCode::NotCritical: return "NotCritical";
  }
  return "Unknown";
}

/// Every recoverable failure in the library is reported with one of these.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cshrink
