#include "alphad/polynomial.hpp"

#include "alphad/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace alphad {

namespace {

bool is_zero_coeff(double v) { return v == 0.0; }
bool is_zero_coeff(const Rational& v) { return v == 0; }

}  // namespace

template <class T>
BasicPoly<T>::BasicPoly(std::vector<T> coefficients) : coeffs_(std::move(coefficients)) {
  trim();
}

template <class T>
BasicPoly<T> BasicPoly<T>::constant(const T& value) {
  return BasicPoly(std::vector<T>{value});
}

template <class T>
BasicPoly<T> BasicPoly<T>::monomial(const T& value, std::size_t power) {
  std::vector<T> c(power + 1, T(0));
  c[power] = value;
  return BasicPoly(std::move(c));
}

template <class T>
T BasicPoly<T>::coefficient(std::size_t power) const {
  return power < coeffs_.size() ? coeffs_[power] : T(0);
}

template <class T>
T BasicPoly<T>::operator()(const T& x) const {
  T acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

template <class T>
BasicPoly<T> BasicPoly<T>::derivative() const {
  if (coeffs_.size() <= 1) {
    return {};
  }
  std::vector<T> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    d[i - 1] = coeffs_[i] * T(static_cast<int>(i));
  }
  return BasicPoly(std::move(d));
}

template <class T>
std::pair<BasicPoly<T>, BasicPoly<T>> BasicPoly<T>::divmod(const BasicPoly& divisor) const {
  if (divisor.is_zero()) {
    throw Error(ErrorKind::ZeroPolynomial, "polynomial division by zero");
  }
  std::vector<T> rem = coeffs_;
  const int dd = divisor.degree();
  if (degree() < dd) {
    return {BasicPoly{}, *this};
  }
  std::vector<T> quot(static_cast<std::size_t>(degree() - dd + 1), T(0));
  const T& lead = divisor.coeffs_.back();
  for (int k = degree() - dd; k >= 0; --k) {
    T q = rem[static_cast<std::size_t>(k + dd)] / lead;
    quot[static_cast<std::size_t>(k)] = q;
    for (int j = 0; j <= dd; ++j) {
      rem[static_cast<std::size_t>(k + j)] -= q * divisor.coeffs_[static_cast<std::size_t>(j)];
    }
    rem[static_cast<std::size_t>(k + dd)] = T(0);
  }
  return {BasicPoly(std::move(quot)), BasicPoly(std::move(rem))};
}

template <class T>
BasicPoly<T>& BasicPoly<T>::operator+=(const BasicPoly& other) {
  if (other.coeffs_.size() > coeffs_.size()) {
    coeffs_.resize(other.coeffs_.size(), T(0));
  }
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) {
    coeffs_[i] += other.coeffs_[i];
  }
  trim();
  return *this;
}

template <class T>
BasicPoly<T>& BasicPoly<T>::operator-=(const BasicPoly& other) {
  if (other.coeffs_.size() > coeffs_.size()) {
    coeffs_.resize(other.coeffs_.size(), T(0));
  }
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) {
    coeffs_[i] -= other.coeffs_[i];
  }
  trim();
  return *this;
}

template <class T>
BasicPoly<T>& BasicPoly<T>::operator*=(const BasicPoly& other) {
  if (is_zero() || other.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<T> out(coeffs_.size() + other.coeffs_.size() - 1, T(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) {
      out[i + j] += coeffs_[i] * other.coeffs_[j];
    }
  }
  coeffs_ = std::move(out);
  trim();
  return *this;
}

template <class T>
void BasicPoly<T>::trim() {
  while (!coeffs_.empty() && is_zero_coeff(coeffs_.back())) {
    coeffs_.pop_back();
  }
}

template <class T>
BasicPoly<T> poly_arith(const BasicPoly<T>& a, const BasicPoly<T>& b, PolyOp op) {
  switch (op) {
    case PolyOp::Add: return a + b;
    case PolyOp::Sub: return a - b;
    case PolyOp::Mul: return a * b;
  }
  return {};
}

template class BasicPoly<double>;
template class BasicPoly<Rational>;
template Poly poly_arith(const Poly&, const Poly&, PolyOp);
template RationalPoly poly_arith(const RationalPoly&, const RationalPoly&, PolyOp);

double eval(const Poly& p, double x) { return p(x); }

Poly to_double(const RationalPoly& p) {
  std::vector<double> c;
  c.reserve(p.coefficients().size());
  for (const auto& r : p.coefficients()) {
    c.push_back(to_double(r));
  }
  return Poly(std::move(c));
}

Poly trim_relative(const Poly& p, double rel_tol) {
  std::vector<double> c = p.coefficients();
  double scale = 0.0;
  for (double v : c) scale = std::max(scale, std::abs(v));
  while (!c.empty() && std::abs(c.back()) <= rel_tol * scale) {
    c.pop_back();
  }
  return Poly(std::move(c));
}

namespace {

using Coeffs = std::vector<double>;

double horner(const Coeffs& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Coeffs differentiate(const Coeffs& c) {
  Coeffs d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * static_cast<double>(i));
  return d;
}

double max_abs(const Coeffs& c) {
  double m = 0.0;
  for (double v : c) m = std::max(m, std::abs(v));
  return m;
}

int sign_of(double v) { return (v > 0) - (v < 0); }

// f(a) and f(b) have strictly opposite signs.
double refine(const Coeffs& c, double a, double b) {
  double fa = horner(c, a);
  for (int it = 0; it < 400; ++it) {
    double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    double fm = horner(c, m);
    if (fm == 0.0) return m;
    if (sign_of(fm) == sign_of(fa)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  // Newton polish, accepted only when it stays bracketed and reduces |f|.
  const Coeffs d = differentiate(c);
  double x = 0.5 * (a + b);
  for (int it = 0; it < 3; ++it) {
    double fx = horner(c, x);
    double dx = horner(d, x);
    if (dx == 0.0) break;
    double nx = x - fx / dx;
    if (nx < a || nx > b || std::abs(horner(c, nx)) >= std::abs(fx)) break;
    x = nx;
  }
  return x;
}

void dedupe(std::vector<double>& xs) {
  std::sort(xs.begin(), xs.end());
  std::vector<double> out;
  for (double x : xs) {
    if (!out.empty() && std::abs(x - out.back()) <= 1e-9 * std::max(1.0, std::abs(x))) continue;
    out.push_back(x);
  }
  xs = std::move(out);
}

// Real roots of c inside (lo, hi]; c is scaled so max|coefficient| = 1.
void isolate(const Coeffs& c, double lo, double hi, double zero_tol, std::vector<double>& out) {
  const std::size_t deg = c.size() - 1;
  if (deg == 0) return;
  if (deg == 1) {
    double r = -c[0] / c[1];
    if (r > lo && r <= hi) out.push_back(r);
    return;
  }
  Coeffs d = differentiate(c);
  const double dscale = max_abs(d);
  for (double& v : d) v /= dscale;
  std::vector<double> crit;
  isolate(d, lo, hi, zero_tol, crit);
  dedupe(crit);

  std::vector<double> points;
  points.push_back(lo);
  points.insert(points.end(), crit.begin(), crit.end());
  points.push_back(hi);
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    double fa = horner(c, points[i]);
    double fb = horner(c, points[i + 1]);
    if (sign_of(fa) * sign_of(fb) < 0) {
      out.push_back(refine(c, points[i], points[i + 1]));
    }
  }
  for (double x : crit) {
    if (std::abs(horner(c, x)) <= zero_tol) out.push_back(x);
  }
  if (std::abs(horner(c, hi)) == 0.0) out.push_back(hi);
}

unsigned multiplicity_at(const Coeffs& c, double x) {
  unsigned m = 1;
  Coeffs d = differentiate(c);
  while (d.size() > 1) {
    const double scale = max_abs(d);
    if (std::abs(horner(d, x)) > 1e-6 * (1.0 + scale)) break;
    ++m;
    d = differentiate(d);
  }
  return m;
}

}  // namespace

std::vector<Root> positive_roots(const Poly& p, double tol) {
  if (p.is_zero()) {
    throw Error(ErrorKind::ZeroPolynomial, "parametric equation is identically zero");
  }
  if (p.degree() > kMaxPolyDegree) {
    throw Error(ErrorKind::DegreeTooHigh,
                "degree " + std::to_string(p.degree()) + " exceeds " + std::to_string(kMaxPolyDegree));
  }
  // alpha = 0 is never admissible, so divide out alpha^k.
  Coeffs c = p.coefficients();
  std::size_t low = 0;
  while (c[low] == 0.0) ++low;
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(low));
  if (c.size() <= 1) {
    return {};
  }
  const double scale = max_abs(c);
  for (double& v : c) v /= scale;

  double bound = 0.0;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) bound = std::max(bound, std::abs(c[i] / c.back()));
  bound += 1.0;

  std::vector<double> found;
  isolate(c, 0.0, bound, 2.0 * tol, found);
  dedupe(found);

  std::vector<Root> roots;
  for (double r : found) {
    if (r <= tol) continue;
    roots.push_back({r, multiplicity_at(c, r)});
  }
  return roots;
}

std::optional<Rational> exact_root_near(const RationalPoly& p, double approx) {
  if (p.is_zero() || !std::isfinite(approx)) {
    return std::nullopt;
  }
  for (const Rational& candidate : convergents(approx, 1'000'000'000'000LL)) {
    if (std::abs(to_double(candidate) - approx) > 1e-8 * std::max(1.0, std::abs(approx))) {
      continue;
    }
    if (p(candidate) == 0) {
      return candidate;
    }
  }
  return std::nullopt;
}

}  // namespace alphad
