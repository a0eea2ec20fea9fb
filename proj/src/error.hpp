#pragma once

#include <stdexcept>
#include <string>

namespace belgauge {

enum class ErrorCode {
  InvalidArgument,
  NotSquare,
  NotHermitian,
  ShapeMismatch,
  NotNormalized,
  InvalidState,
  NotPure,
  IndexOutOfRange,
  DimensionCap,
  SettingsTooSmall,
  DimensionTooSmall,
  RankTooSmall,
  InvalidLowerBound,
  CutoffTooSmall,
  NotTwoQubit,
  ParseError,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace belgauge
