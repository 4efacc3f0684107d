#pragma once

#include <stdexcept>
#include <string>

namespace tropell {

enum class ErrorCode {
  ParseError,
  DivisionByZero,
  InfiniteValuation,
  InvalidModel,
  InvalidArgument,
  ModelNotAdapted,
  NonIntegralSlope,
  NotPrincipal,
  SingularCurve,
  ResidueCharUnsupported,
  TwistInfeasible,
  CapExceeded,
  NotTransvection,
  HypothesisViolated,
  NotNonIntegralJ,
  UndefinedHasse,
  InternalCheckFailed,
};

inline const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::InfiniteValuation: return "InfiniteValuation";
    case ErrorCode::InvalidModel: return "InvalidModel";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ModelNotAdapted: return "ModelNotAdapted";
    case ErrorCode::NonIntegralSlope: return "NonIntegralSlope";
    case ErrorCode::NotPrincipal: return "NotPrincipal";
    case ErrorCode::SingularCurve: return "SingularCurve";
    case ErrorCode::ResidueCharUnsupported: return "ResidueCharUnsupported";
    case ErrorCode::TwistInfeasible: return "TwistInfeasible";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::NotTransvection: return "NotTransvection";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::NotNonIntegralJ: return "NotNonIntegralJ";
    case ErrorCode::UndefinedHasse: return "UndefinedHasse";
    case ErrorCode::InternalCheckFailed: return "InternalCheckFailed";
  }
  return "Unknown";
}

/// Every recoverable failure in the library. `code()` is the machine-readable
/// name the CLI reports.
class DomainError : public std::runtime_error {
 public:
  DomainError(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }
  const char* name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

/// Identity checks the library asserts on its own outputs (e.g. 1728Δ = c4³ - c6²).
inline void ensure(bool ok, const std::string& what) {
  if (!ok) throw DomainError(ErrorCode::InternalCheckFailed, what);
}

}  // namespace tropell
