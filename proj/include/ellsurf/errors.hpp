#pragma once

#include <stdexcept>
#include <string>

namespace ellsurf {

enum class ErrorCode {
  ParseError,
  ZeroPolynomial,
  DivisionByZero,
  NotIrreducible,
  DomainViolation,
  SingularModel,
  IsotrivialCurve,
  NonintegralChi,
  PointNotOnCurve,
  MinimalityViolation,
  ComponentIdentificationFailure,
  PointOnDivisor,
  DependentBasis,
  BasisNotOnCurve,
  EvenDegree,
  ParityViolation,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NotIrreducible: return "NotIrreducible";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::SingularModel: return "SingularModel";
    case ErrorCode::IsotrivialCurve: return "IsotrivialCurve";
    case ErrorCode::NonintegralChi: return "NonintegralChi";
    case ErrorCode::PointNotOnCurve: return "PointNotOnCurve";
    case ErrorCode::MinimalityViolation: return "MinimalityViolation";
    case ErrorCode::ComponentIdentificationFailure: return "ComponentIdentificationFailure";
    case ErrorCode::PointOnDivisor: return "PointOnDivisor";
    case ErrorCode::DependentBasis: return "DependentBasis";
    case ErrorCode::BasisNotOnCurve: return "BasisNotOnCurve";
    case ErrorCode::EvenDegree: return "EvenDegree";
    case ErrorCode::ParityViolation: return "ParityViolation";
  }
  return "Unknown";
}

/// All library failures are reported through this one exception type; the
/// code lets callers (the CLI in particular) map failures to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ellsurf
