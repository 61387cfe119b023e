#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bsrd {

enum class ErrorKind {
  ParameterViolation,
  MissingParameter,
  NumericIntegrity,
  UnsupportedFamily,
  DegenerateVariance,
  Domain,
  InternalConsistency,
  InsufficientData,
  EvaluationSingularity,
  InversionIntegrity,
  Refused,
  Config,
};

std::string_view error_kind_name(ErrorKind kind);

/// Every failure the library reports carries one of the kinds above so
/// callers (the CLI in particular) can map it onto a message and exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace bsrd
