#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace arinv {

enum class ErrorKind {
  NotSquarefree,
  NoConvergence,
  FactorBudgetExceeded,
  ZeroElement,
  NotAUnit,
  WrongUnitCount,
  DependentUnits,
  MissingUnits,
  DegreeMismatch,
  NotASubfield,
  InvalidField,
  NotUpperHalfPlane,
  TauNotReduced,
  SingularCurve,
  AgmNoConvergence,
  PointNotOnCurve,
  NotMinimal,
  DependentPoints,
  RankMismatch,
  HeightMismatch,
  Internal,
  ParseError,
  DuplicateLabel,
  DanglingSubfieldRef,
  UnknownLabel,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotSquarefree: return "NotSquarefree";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::FactorBudgetExceeded: return "FactorBudgetExceeded";
    case ErrorKind::ZeroElement: return "ZeroElement";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::WrongUnitCount: return "WrongUnitCount";
    case ErrorKind::DependentUnits: return "DependentUnits";
    case ErrorKind::MissingUnits: return "MissingUnits";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::NotASubfield: return "NotASubfield";
    case ErrorKind::InvalidField: return "InvalidField";
    case ErrorKind::NotUpperHalfPlane: return "NotUpperHalfPlane";
    case ErrorKind::TauNotReduced: return "TauNotReduced";
    case ErrorKind::SingularCurve: return "SingularCurve";
    case ErrorKind::AgmNoConvergence: return "AgmNoConvergence";
    case ErrorKind::PointNotOnCurve: return "PointNotOnCurve";
    case ErrorKind::NotMinimal: return "NotMinimal";
    case ErrorKind::DependentPoints: return "DependentPoints";
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::HeightMismatch: return "HeightMismatch";
    case ErrorKind::Internal: return "Internal";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DuplicateLabel: return "DuplicateLabel";
    case ErrorKind::DanglingSubfieldRef: return "DanglingSubfieldRef";
    case ErrorKind::UnknownLabel: return "UnknownLabel";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace arinv
