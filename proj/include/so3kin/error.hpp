#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace so3kin {

enum class ErrorCode {
  NonFinite,
  NotOrthogonal,
  NotProperRotation,
  NotProjectable,
  NoConvergence,
  DegenerateFrame,
  NotSkew,
  NonUniformSampling,
  TooFewSamples,
  DegenerateInput,
  OutOfRange,
  EmptyProfile,
  BadStep,
  InvalidProfile,
  InvalidConfig,
  Io,
  Parse,
};

std::string_view to_string(ErrorCode code);

// Every failure in the library surfaces as this exception; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace so3kin
