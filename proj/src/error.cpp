#include "rgflow/error.hpp"

namespace rgflow {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::UnsupportedOrder: return "unsupported-order error";
    case ErrorKind::CorruptedFunction: return "corrupted-function error";
    case ErrorKind::Truncation: return "truncation error";
    case ErrorKind::NotZeroMass: return "not-zero-mass error";
    case ErrorKind::Resolution: return "resolution error";
    case ErrorKind::NonAdmissibleTimescale: return "non-admissible-timescale error";
    case ErrorKind::HypothesisViolation: return "hypothesis-violation error";
    case ErrorKind::DegenerateInput: return "degenerate-input error";
    case ErrorKind::BadReference: return "bad-reference error";
    case ErrorKind::OutsideAnalyticity: return "outside-analyticity error";
    case ErrorKind::Config: return "config error";
    case ErrorKind::NoConvergence: return "no-convergence error";
    case ErrorKind::Divergence: return "divergence error";
    case ErrorKind::StaleState: return "stale-state error";
    case ErrorKind::InternalConsistency: return "internal-consistency error";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Admissibility: return "admissibility error";
  }
  return "unknown error";
}

ErrorClass error_class(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotZeroMass:
    case ErrorKind::NonAdmissibleTimescale:
    case ErrorKind::HypothesisViolation:
    case ErrorKind::DegenerateInput:
    case ErrorKind::BadReference:
    case ErrorKind::OutsideAnalyticity:
    case ErrorKind::Admissibility:
      return ErrorClass::Hypothesis;
    case ErrorKind::CorruptedFunction:
    case ErrorKind::Truncation:
    case ErrorKind::Resolution:
    case ErrorKind::NoConvergence:
    case ErrorKind::Divergence:
    case ErrorKind::StaleState:
    case ErrorKind::InternalConsistency:
      return ErrorClass::Numerical;
    case ErrorKind::Domain:
    case ErrorKind::UnsupportedOrder:
    case ErrorKind::Config:
    case ErrorKind::Parse:
      return ErrorClass::Usage;
  }
  return ErrorClass::Usage;
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace rgflow
