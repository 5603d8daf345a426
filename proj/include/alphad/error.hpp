#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace alphad {

enum class ErrorKind {
  Parse,
  InvalidProblem,
  NonEquationPreference,
  NonPositiveParameter,
  ZeroPolynomial,
  DegreeTooHigh,
  NotSquare,
  FullRank,
  NonPositiveComponent,
  NonlinearPreferencePresent,
  DegenerateCore,
  NoPositiveRoot,
  InconsistentExtraParams,
  NotPairwise,
  MissingPair,
  ConflictingPair,
  NoConvergence,
  OffSimplex,
  NotTriangular,
  MultipleFreeVars,
  OverDetermined,
  EmptyDomain,
  Internal,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the engine carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(int line, int column, std::string message);

  [[nodiscard]] int line() const noexcept { return line_; }
  [[nodiscard]] int column() const noexcept { return column_; }
  [[nodiscard]] const std::string& cause() const noexcept { return cause_; }

 private:
  int line_;
  int column_;
  std::string cause_;
};

}  // namespace alphad
