#pragma once

#include "alphad/linear_core.hpp"
#include "alphad/preference_model.hpp"

#include <cstddef>
#include <vector>

namespace alphad {

inline constexpr double kAhpTol = 1e-10;
inline constexpr int kAhpMaxIter = 10'000;

/// Positive reciprocal matrix: unit diagonal, a(j,i) = 1/a(i,j).
class AhpMatrix {
 public:
  /// Validates positivity, the unit diagonal and reciprocity within 1e-12.
  /// Throws InvalidProblem.
  explicit AhpMatrix(Matrix<double> m);

  [[nodiscard]] const Matrix<double>& matrix() const { return m_; }
  [[nodiscard]] std::size_t size() const { return m_.rows(); }

 private:
  Matrix<double> m_;
};

enum class AhpMethod { PowerIteration, Squaring };

struct AhpResult {
  double lambda_max = 0.0;
  std::vector<double> vector;
  double ci = 0.0;
  int iterations = 0;
  AhpMethod method = AhpMethod::PowerIteration;
};

/// Every preference must be pairwise and every unordered pair stated once
/// (a consistent reciprocal duplicate is tolerated). Throws NotPairwise,
/// MissingPair, ConflictingPair.
AhpMatrix build_ahp_matrix(const Problem& problem);

/// Power iteration from the uniform vector. Throws NoConvergence.
AhpResult principal_eigen(const AhpMatrix& m, double tol = kAhpTol, int max_iter = kAhpMaxIter);

/// Eigenvector directly when lambda_max is n, otherwise repeated squaring
/// A^2, A^4, ... with normalized row sums until successive vectors agree.
/// Throws NoConvergence.
AhpResult ahp_priority(const AhpMatrix& m, double tol = kAhpTol, int max_iter = kAhpMaxIter);

}  // namespace alphad
