#pragma once

#include <stdexcept>
#include <string>

namespace wlab {

enum class ErrorCode {
  NotAPGroup,
  GroupTooLarge,
  UnknownCatalogEntry,
  BadParams,
  NotCyclic,
  PreconditionViolated,
  BasisMismatch,
  ActionUndefined,
  NotAHomomorphism,
  NotAUnit,
  ZeroResidue,
  DimensionMismatch,
  NonIntegralResult,
  NonIntegralInput,
  IntegralityViolation,
  PrecisionExhausted,
  M3Violation,
  GaloisDescentFailure,
  InternalMismatch,
  BadInput,
};

const char* error_code_name(ErrorCode c);

// Single exception type for the whole library; tests and the CLI dispatch on
// the code, messages are for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotAPGroup: return "NotAPGroup";
    case ErrorCode::GroupTooLarge: return "GroupTooLarge";
    case ErrorCode::UnknownCatalogEntry: return "UnknownCatalogEntry";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::NotCyclic: return "NotCyclic";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::BasisMismatch: return "BasisMismatch";
    case ErrorCode::ActionUndefined: return "ActionUndefined";
    case ErrorCode::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::ZeroResidue: return "ZeroResidue";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonIntegralResult: return "NonIntegralResult";
    case ErrorCode::NonIntegralInput: return "NonIntegralInput";
    case ErrorCode::IntegralityViolation: return "IntegralityViolation";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::M3Violation: return "M3Violation";
    case ErrorCode::GaloisDescentFailure: return "GaloisDescentFailure";
    case ErrorCode::InternalMismatch: return "InternalMismatch";
    case ErrorCode::BadInput: return "BadInput";
  }
  return "Error";
}

}  // namespace wlab
