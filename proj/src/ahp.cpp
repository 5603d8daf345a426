#include "alphad/ahp.hpp"

#include "alphad/error.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace alphad {

namespace {

constexpr double kReciprocalTol = 1e-12;
constexpr double kConsistentLambdaTol = 1e-8;

double sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

std::vector<double> row_sums_normalized(const Matrix<double>& m) {
  std::vector<double> v(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (double x : m.row(i)) v[i] += x;
  }
  const double s = sum(v);
  for (double& x : v) x /= s;
  return v;
}

Matrix<double> square(const Matrix<double>& m) {
  const std::size_t n = m.rows();
  Matrix<double> out(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double a = m(i, k);
      for (std::size_t j = 0; j < n; ++j) out(i, j) += a * m(k, j);
    }
  }
  return out;
}

double consistency_index(double lambda, std::size_t n) {
  return (lambda - static_cast<double>(n)) / static_cast<double>(n - 1);
}

}  // namespace

AhpMatrix::AhpMatrix(Matrix<double> m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() < 2) {
    throw Error(ErrorKind::InvalidProblem, "a pairwise matrix must be square with n >= 2");
  }
  for (std::size_t i = 0; i < m_.rows(); ++i) {
    if (m_(i, i) != 1.0) throw Error(ErrorKind::InvalidProblem, "pairwise matrix diagonal must be 1");
    for (std::size_t j = 0; j < m_.cols(); ++j) {
      if (!(m_(i, j) > 0.0) || !std::isfinite(m_(i, j))) {
        throw Error(ErrorKind::InvalidProblem, "pairwise matrix entries must be positive");
      }
      if (std::abs(m_(i, j) * m_(j, i) - 1.0) > kReciprocalTol) {
        throw Error(ErrorKind::InvalidProblem, "pairwise matrix is not reciprocal");
      }
    }
  }
}

AhpMatrix build_ahp_matrix(const Problem& problem) {
  const std::size_t n = problem.size();
  Matrix<std::optional<Rational>> stated(n, n);
  for (std::size_t p = 0; p < problem.preferences().size(); ++p) {
    const auto view = as_pairwise(problem.preferences()[p]);
    if (!view) {
      throw Error(ErrorKind::NotPairwise,
                  "preference " + std::to_string(p + 1) + " is not a pairwise comparison");
    }
    const std::size_t i = view->subject;
    const std::size_t j = view->other;
    if (stated(i, j)) {
      if (*stated(i, j) != view->ratio) {
        throw Error(ErrorKind::ConflictingPair, "conflicting statements for " + problem.criteria().name(i) +
                                                    "/" + problem.criteria().name(j));
      }
      continue;
    }
    stated(i, j) = view->ratio;
    stated(j, i) = Rational(1) / view->ratio;
  }
  Matrix<double> m(n, n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (!stated(i, j)) {
        throw Error(ErrorKind::MissingPair, "no comparison between " + problem.criteria().name(i) + " and " +
                                                problem.criteria().name(j));
      }
      m(i, j) = to_double(*stated(i, j));
    }
  }
  return AhpMatrix(std::move(m));
}

AhpResult principal_eigen(const AhpMatrix& am, double tol, int max_iter) {
  const Matrix<double>& a = am.matrix();
  const std::size_t n = am.size();
  std::vector<double> v(n, 1.0 / static_cast<double>(n));
  for (int it = 1; it <= max_iter; ++it) {
    std::vector<double> w = multiply<double>(a, v);
    const double lambda = sum(w);  // sum(v) == 1
    for (double& x : w) x /= lambda;
    const double diff = max_diff(w, v);
    v = std::move(w);
    if (diff < tol) {
      return {lambda, v, consistency_index(lambda, n), it, AhpMethod::PowerIteration};
    }
  }
  throw Error(ErrorKind::NoConvergence, "power iteration did not converge in " + std::to_string(max_iter) +
                                            " iterations");
}

AhpResult ahp_priority(const AhpMatrix& am, double tol, int max_iter) {
  const AhpResult eigen = principal_eigen(am, tol, max_iter);
  const std::size_t n = am.size();
  if (std::abs(eigen.lambda_max - static_cast<double>(n)) <= kConsistentLambdaTol * static_cast<double>(n)) {
    return eigen;
  }
  Matrix<double> b = am.matrix();
  std::vector<double> prev = row_sums_normalized(b);
  for (int it = 1; it <= max_iter; ++it) {
    b = square(b);
    const double scale = max_abs_entry(b);
    for (std::size_t i = 0; i < n; ++i) {
      for (double& x : b.row(i)) x /= scale;
    }
    std::vector<double> v = row_sums_normalized(b);
    const double diff = max_diff(v, prev);
    prev = std::move(v);
    if (diff < tol) {
      // Rayleigh-style quotient on the original matrix; the rescaled power
      // A^(2^k) carries no usable eigenvalue.
      const double lambda = sum(multiply<double>(am.matrix(), prev)) / sum(prev);
      return {lambda, prev, consistency_index(lambda, n), it, AhpMethod::Squaring};
    }
  }
  throw Error(ErrorKind::NoConvergence, "matrix squaring did not converge in " + std::to_string(max_iter) +
                                            " steps");
}

}  // namespace alphad
