#pragma once

#include <stdexcept>
#include <string>

namespace rgflow {

enum class ErrorKind {
  Domain,
  UnsupportedOrder,
  CorruptedFunction,
  Truncation,
  NotZeroMass,
  Resolution,
  NonAdmissibleTimescale,
  HypothesisViolation,
  DegenerateInput,
  BadReference,
  OutsideAnalyticity,
  Config,
  NoConvergence,
  Divergence,
  StaleState,
  InternalConsistency,
  Parse,
  Admissibility,
};

/// Coarse grouping used to pick a process exit code.
enum class ErrorClass {
  Usage,       // malformed input or configuration
  Hypothesis,  // data or parameters outside the theory's assumptions
  Numerical,   // discretization or solver failure
};

const char* to_string(ErrorKind kind) noexcept;
ErrorClass error_class(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace rgflow
