#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace greensign {

enum class ErrorCode {
  InvalidArgument,
  ResonantPotential,
  IntegratorFailure,
  BracketingFailure,
  Undetermined,
  NotPositive,
  NonpositiveWeightedIntegral,
  QuadratureFailure,
  OutOfRange,
  InvalidWeight,
  UnsupportedBoundaryKind,
  NonpositiveEta,
  EvaluationFailure,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace greensign
