#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace urnlab {

enum class ErrorCode {
  DegenerateUrn,
  NonPositiveCount,
  BadParameter,
  ModelMismatch,
  Unsupported,
  UnsupportedModel,
  OutOfRangeState,
  MissingMoment,
  RequiresCEquals1,
  SameColor,
  StateSpaceTooLarge,
  RootFindingFailed,
  NoConvergence,
  NonRealResult,
  UsageError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so the
// CLI can map it onto a structured error object.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace urnlab
