#include "alphad/error.hpp"

namespace alphad {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::InvalidProblem: return "InvalidProblem";
    case ErrorKind::NonEquationPreference: return "NonEquationPreference";
    case ErrorKind::NonPositiveParameter: return "NonPositiveParameter";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::DegreeTooHigh: return "DegreeTooHigh";
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::FullRank: return "FullRank";
    case ErrorKind::NonPositiveComponent: return "NonPositiveComponent";
    case ErrorKind::NonlinearPreferencePresent: return "NonlinearPreferencePresent";
    case ErrorKind::DegenerateCore: return "DegenerateCore";
    case ErrorKind::NoPositiveRoot: return "NoPositiveRoot";
    case ErrorKind::InconsistentExtraParams: return "InconsistentExtraParams";
    case ErrorKind::NotPairwise: return "NotPairwise";
    case ErrorKind::MissingPair: return "MissingPair";
    case ErrorKind::ConflictingPair: return "ConflictingPair";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::OffSimplex: return "OffSimplex";
    case ErrorKind::NotTriangular: return "NotTriangular";
    case ErrorKind::MultipleFreeVars: return "MultipleFreeVars";
    case ErrorKind::OverDetermined: return "OverDetermined";
    case ErrorKind::EmptyDomain: return "EmptyDomain";
    case ErrorKind::Internal: return "InternalInvariantViolation";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

ParseError::ParseError(int line, int column, std::string message)
    : Error(ErrorKind::Parse,
            "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      cause_(std::move(message)) {}

}  // namespace alphad
