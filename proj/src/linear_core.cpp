#include "alphad/linear_core.hpp"

#include "alphad/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace alphad {

namespace {

double magnitude(double v) { return std::abs(v); }
Rational magnitude(const Rational& v) { return abs(v); }

bool negligible(double v, double threshold) { return std::abs(v) <= threshold; }
bool negligible(const Rational& v, double /*threshold*/) { return v == 0; }

double as_double(double v) { return v; }
double as_double(const Rational& v) { return to_double(v); }

template <class T>
void require_square(const Matrix<T>& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::NotSquare, std::string(what) + " needs a square matrix, got " +
                                          std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

template <class T>
struct Echelon {
  Matrix<T> reduced;
  std::vector<std::size_t> pivot_cols;
};

template <class T>
Echelon<T> reduce(const Matrix<T>& m, double tol) {
  Echelon<T> e{m, {}};
  Matrix<T>& a = e.reduced;
  const double threshold = tol * as_double(max_abs_entry(m));
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t best = r;
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (magnitude(a(i, c)) > magnitude(a(best, c))) best = i;
    }
    if (negligible(a(best, c), threshold)) {
      continue;
    }
    a.swap_rows(best, r);
    const T pivot = a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) /= pivot;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r) continue;
      const T factor = a(i, c);
      if (factor == T(0)) continue;
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= factor * a(r, j);
      a(i, c) = T(0);
    }
    e.pivot_cols.push_back(c);
    ++r;
  }
  return e;
}

template <class T>
BasicPoly<T> cofactor_det(const PolyMatrixT<T>& m) {
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  BasicPoly<T> acc;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    PolyMatrixT<T> minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::size_t cc = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = m(r, c);
      }
    }
    BasicPoly<T> term = m(0, j) * cofactor_det(minor);
    if (j % 2 == 0) {
      acc += term;
    } else {
      acc -= term;
    }
  }
  return acc;
}

template <class T>
BasicPoly<T> bareiss_det(PolyMatrixT<T> m) {
  const std::size_t n = m.rows();
  bool negate = false;
  BasicPoly<T> prev = BasicPoly<T>::constant(T(1));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t swap_with = k;
      for (std::size_t i = k + 1; i < n; ++i) {
        if (!m(i, k).is_zero()) {
          swap_with = i;
          break;
        }
      }
      if (swap_with == k) return {};
      m.swap_rows(k, swap_with);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BasicPoly<T> num = m(k, k) * m(i, j) - m(i, k) * m(k, j);
        m(i, j) = num.divmod(prev).first;
      }
      m(i, k) = BasicPoly<T>{};
    }
    prev = m(k, k);
  }
  BasicPoly<T> det = m(n - 1, n - 1);
  return negate ? -det : det;
}

}  // namespace

template <class T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<T>> init)
    : rows_(init.size()), cols_(init.size() ? init.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : init) {
    if (r.size() != cols_) {
      throw Error(ErrorKind::InvalidProblem, "ragged matrix initializer");
    }
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

template <class T>
void Matrix<T>::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

template <class T>
Matrix<T> Matrix<T>::select_rows(std::span<const std::size_t> indices) const {
  Matrix out(indices.size(), cols_);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    for (std::size_t c = 0; c < cols_; ++c) out(i, c) = (*this)(indices[i], c);
  }
  return out;
}

template <class T>
Matrix<T> evaluate(const PolyMatrixT<T>& m, const T& x) {
  Matrix<T> out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c)(x);
  return out;
}

Matrix<double> to_double(const Matrix<Rational>& m) {
  Matrix<double> out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = to_double(m(r, c));
  return out;
}

template <class T>
T max_abs_entry(const Matrix<T>& m) {
  T best(0);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) best = std::max(best, magnitude(m(r, c)));
  return best;
}

template <class T>
T determinant(const Matrix<T>& m) {
  require_square(m, "determinant");
  Matrix<T> a = m;
  const std::size_t n = a.rows();
  T det(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (magnitude(a(i, k)) > magnitude(a(best, k))) best = i;
    }
    if (a(best, k) == T(0)) return T(0);
    if (best != k) {
      a.swap_rows(best, k);
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const T factor = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= factor * a(k, j);
    }
  }
  return det;
}

template <class T>
BasicPoly<T> det_poly(const PolyMatrixT<T>& m) {
  require_square(m, "det_poly");
  if (m.rows() == 0) return BasicPoly<T>::constant(T(1));
  if (m.rows() <= 4) return cofactor_det(m);
  return bareiss_det(m);
}

template <class T>
std::size_t rank(const Matrix<T>& m, double tol) {
  return reduce(m, tol).pivot_cols.size();
}

template <class T>
std::vector<T> GeneralSolution<T>::evaluate(std::span<const T> secondary_values) const {
  std::vector<T> x(n, T(0));
  for (std::size_t s = 0; s < secondary_vars.size(); ++s) x[secondary_vars[s]] = secondary_values[s];
  for (std::size_t k = 0; k < main_vars.size(); ++k) {
    T acc(0);
    for (std::size_t s = 0; s < secondary_vars.size(); ++s) acc += coefficients(k, s) * secondary_values[s];
    x[main_vars[k]] = acc;
  }
  return x;
}

template <class T>
std::vector<std::vector<T>> GeneralSolution<T>::basis() const {
  std::vector<std::vector<T>> out;
  for (std::size_t s = 0; s < secondary_vars.size(); ++s) {
    std::vector<T> unit(secondary_vars.size(), T(0));
    unit[s] = T(1);
    out.push_back(evaluate(unit));
  }
  return out;
}

template <class T>
GeneralSolution<T> general_solution(const Matrix<T>& m, double tol) {
  Echelon<T> e = reduce(m, tol);
  GeneralSolution<T> gs;
  gs.n = m.cols();
  gs.main_vars = e.pivot_cols;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (std::find(e.pivot_cols.begin(), e.pivot_cols.end(), c) == e.pivot_cols.end()) {
      gs.secondary_vars.push_back(c);
    }
  }
  if (gs.secondary_vars.empty()) {
    throw Error(ErrorKind::FullRank, "system has only the null solution (rank " +
                                         std::to_string(m.cols()) + ")");
  }
  gs.coefficients = Matrix<T>(gs.main_vars.size(), gs.secondary_vars.size());
  for (std::size_t k = 0; k < gs.main_vars.size(); ++k) {
    for (std::size_t s = 0; s < gs.secondary_vars.size(); ++s) {
      gs.coefficients(k, s) = -e.reduced(k, gs.secondary_vars[s]);
    }
  }
  return gs;
}

template <class T>
std::vector<T> particular_positive(const GeneralSolution<T>& gs) {
  std::vector<T> ones(gs.secondary_vars.size(), T(1));
  std::vector<T> x = gs.evaluate(ones);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > T(0))) {
      throw Error(ErrorKind::NonPositiveComponent,
                  "component " + std::to_string(i + 1) + " of the particular solution is not positive");
    }
  }
  return x;
}

template <class T>
std::vector<T> normalize(std::span<const T> v) {
  T sum(0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > T(0))) {
      throw Error(ErrorKind::NonPositiveComponent,
                  "cannot normalize: component " + std::to_string(i + 1) + " is not positive");
    }
    sum += v[i];
  }
  std::vector<T> out(v.begin(), v.end());
  for (auto& x : out) x /= sum;
  return out;
}

template <class T>
std::vector<T> multiply(const Matrix<T>& m, std::span<const T> v) {
  std::vector<T> out(m.rows(), T(0));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r] += m(r, c) * v[c];
  return out;
}

std::optional<std::vector<Rational>> positive_null_vector(const Matrix<Rational>& a) {
  // Feasibility of A x = 0, x >= 1 (scale invariance makes this equivalent to
  // x > 0). With x = 1 + u: A u = -A 1, u >= 0. Phase-one simplex with one
  // artificial per row and Bland's rule, which terminates in exact arithmetic.
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const std::size_t cols = n + m + 1;  // u, artificials, right-hand side
  Matrix<Rational> t(m, cols);
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) {
    Rational rhs(0);
    for (std::size_t c = 0; c < n; ++c) rhs -= a(r, c);
    const Rational sign = rhs < 0 ? Rational(-1) : Rational(1);
    for (std::size_t c = 0; c < n; ++c) t(r, c) = sign * a(r, c);
    t(r, n + r) = Rational(1);
    t(r, cols - 1) = sign * rhs;
    basis[r] = n + r;
  }
  auto reduced_cost = [&](std::size_t c) {
    Rational d = c >= n && c < n + m ? Rational(1) : Rational(0);
    for (std::size_t r = 0; r < m; ++r) {
      if (basis[r] >= n) d -= t(r, c);
    }
    return d;
  };
  for (;;) {
    std::optional<std::size_t> enter;
    for (std::size_t c = 0; c + 1 < cols; ++c) {
      if (reduced_cost(c) < 0) {
        enter = c;
        break;
      }
    }
    if (!enter) break;
    std::optional<std::size_t> leave;
    Rational best;
    for (std::size_t r = 0; r < m; ++r) {
      if (t(r, *enter) <= 0) continue;
      Rational ratio = t(r, cols - 1) / t(r, *enter);
      if (!leave || ratio < best || (ratio == best && basis[r] < basis[*leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (!leave) break;  // unreachable: the phase-one objective is bounded below by zero
    const Rational pivot = t(*leave, *enter);
    for (std::size_t c = 0; c < cols; ++c) t(*leave, c) /= pivot;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == *leave || t(r, *enter) == 0) continue;
      const Rational f = t(r, *enter);
      for (std::size_t c = 0; c < cols; ++c) t(r, c) -= f * t(*leave, c);
    }
    basis[*leave] = *enter;
  }
  std::vector<Rational> x(n, Rational(1));
  for (std::size_t r = 0; r < m; ++r) {
    if (basis[r] >= n) {
      if (t(r, cols - 1) != 0) return std::nullopt;
    } else {
      x[basis[r]] += t(r, cols - 1);
    }
  }
  return x;
}

#define ALPHAD_INSTANTIATE(T)                                                     \
  template class Matrix<T>;                                                       \
  template class Matrix<BasicPoly<T>>;                                            \
  template Matrix<T> evaluate(const PolyMatrixT<T>&, const T&);                   \
  template T max_abs_entry(const Matrix<T>&);                                     \
  template T determinant(const Matrix<T>&);                                       \
  template BasicPoly<T> det_poly(const PolyMatrixT<T>&);                          \
  template std::size_t rank(const Matrix<T>&, double);                            \
  template struct GeneralSolution<T>;                                             \
  template GeneralSolution<T> general_solution(const Matrix<T>&, double);         \
  template std::vector<T> particular_positive(const GeneralSolution<T>&);         \
  template std::vector<T> normalize(std::span<const T>);                          \
  template std::vector<T> multiply(const Matrix<T>&, std::span<const T>);

ALPHAD_INSTANTIATE(double)
ALPHAD_INSTANTIATE(Rational)

#undef ALPHAD_INSTANTIATE

}  // namespace alphad
