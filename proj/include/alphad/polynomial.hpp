#pragma once

#include "alphad/rational.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace alphad {

inline constexpr int kMaxPolyDegree = 16;
inline constexpr double kDefaultRootTol = 1e-10;

/// Dense univariate polynomial in the base parameter. coefficients()[i] is
/// the coefficient of alpha^i; trailing zeros are trimmed, so the zero
/// polynomial has no coefficients.
template <class T>
class BasicPoly {
 public:
  BasicPoly() = default;
  explicit BasicPoly(std::vector<T> coefficients);

  static BasicPoly constant(const T& value);
  /// value * alpha^power
  static BasicPoly monomial(const T& value, std::size_t power);

  [[nodiscard]] const std::vector<T>& coefficients() const { return coeffs_; }
  [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] T coefficient(std::size_t power) const;

  /// Horner evaluation.
  [[nodiscard]] T operator()(const T& x) const;
  [[nodiscard]] BasicPoly derivative() const;

  /// Quotient and remainder; divisor must be nonzero.
  [[nodiscard]] std::pair<BasicPoly, BasicPoly> divmod(const BasicPoly& divisor) const;

  BasicPoly& operator+=(const BasicPoly& other);
  BasicPoly& operator-=(const BasicPoly& other);
  BasicPoly& operator*=(const BasicPoly& other);

  friend BasicPoly operator+(BasicPoly a, const BasicPoly& b) { return a += b; }
  friend BasicPoly operator-(BasicPoly a, const BasicPoly& b) { return a -= b; }
  friend BasicPoly operator*(BasicPoly a, const BasicPoly& b) { return a *= b; }
  friend BasicPoly operator-(BasicPoly a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend bool operator==(const BasicPoly&, const BasicPoly&) = default;

 private:
  void trim();
  std::vector<T> coeffs_;
};

using Poly = BasicPoly<double>;
using RationalPoly = BasicPoly<Rational>;

enum class PolyOp { Add, Sub, Mul };

template <class T>
BasicPoly<T> poly_arith(const BasicPoly<T>& a, const BasicPoly<T>& b, PolyOp op);

double eval(const Poly& p, double x);

Poly to_double(const RationalPoly& p);

/// Drops leading coefficients with magnitude <= rel_tol * max|coefficient|.
Poly trim_relative(const Poly& p, double rel_tol);

struct Root {
  double value = 0.0;
  unsigned multiplicity = 1;
  friend bool operator==(const Root&, const Root&) = default;
};

/// Real roots strictly greater than `tol`, ascending. Roots are isolated by
/// recursing on the derivative: between consecutive critical points the
/// polynomial is monotone, so a sign change brackets exactly one root, which
/// is refined by bisection plus Newton polishing. Critical points where the
/// polynomial vanishes are touching (even-multiplicity) roots.
/// Throws ZeroPolynomial / DegreeTooHigh.
std::vector<Root> positive_roots(const Poly& p, double tol = kDefaultRootTol);

/// Exact rational root near `approx`, if one exists with a modest denominator.
std::optional<Rational> exact_root_near(const RationalPoly& p, double approx);

}  // namespace alphad
