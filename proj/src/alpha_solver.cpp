#include "alphad/alpha_solver.hpp"

#include "alphad/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace alphad {

namespace {

constexpr double kExtraParamRelTol = 1e-6;
constexpr double kResidualTol = 1e-9;

Number consistency_of(const Number& alpha) {
  if (alpha.exact) return Number(*alpha.exact <= 1 ? *alpha.exact : Rational(1) / *alpha.exact);
  return Number(alpha.value <= 1.0 ? alpha.value : 1.0 / alpha.value);
}

Number one_minus(const Number& c) {
  if (c.exact) return Number(Rational(1) - *c.exact);
  return Number(1.0 - c.value);
}

// Row r of the system with its right-hand side scaled by `scale`.
template <class T>
void fill_row(Matrix<T>& m, std::size_t r, const Matrix<Rational>& base, std::size_t src, const T& scale) {
  for (std::size_t c = 0; c < base.cols(); ++c) {
    const Rational& a = base(src, c);
    if (a == 1) {
      m(r, c) = T(1);
    } else if (a != 0) {
      if constexpr (std::is_same_v<T, Rational>) {
        m(r, c) = a * scale;
      } else {
        m(r, c) = to_double(a) * scale;
      }
    }
  }
}

template <class T>
T convert(const Number& v) {
  if constexpr (std::is_same_v<T, Rational>) {
    return *v.exact;
  } else {
    return v.value;
  }
}

// Minor made of the core rows except `skip` plus the extra row, whose
// right-hand side carries its own parameter X. det is a polynomial in X of
// degree at most one.
template <class T>
std::vector<double> extra_row_solutions(const ParamSystem& ps, std::size_t extra_row, const T& alpha,
                                        std::optional<Rational>& exact_value) {
  const std::size_t n = ps.n;
  std::vector<double> out;
  bool all_exact = std::is_same_v<T, Rational>;
  std::optional<Rational> first_exact;
  for (std::size_t skip = 0; skip < n; ++skip) {
    PolyMatrixT<T> minor(n, n);
    std::size_t r = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == skip) continue;
      const std::size_t row = ps.core_rows[k];
      const T scale = convert<T>(Number(ps.multipliers[row])) * alpha;
      Matrix<T> numeric(1, n);
      fill_row(numeric, 0, ps.base, row, scale);
      for (std::size_t c = 0; c < n; ++c) minor(r, c) = BasicPoly<T>::constant(numeric(0, c));
      ++r;
    }
    for (std::size_t c = 0; c < n; ++c) {
      const Rational& a = ps.base(extra_row, c);
      if (a == 1) {
        minor(r, c) = BasicPoly<T>::constant(T(1));
      } else if (a != 0) {
        if constexpr (std::is_same_v<T, Rational>) {
          minor(r, c) = BasicPoly<T>::monomial(a, 1);
        } else {
          minor(r, c) = BasicPoly<T>::monomial(to_double(a), 1);
        }
      }
    }
    const BasicPoly<T> d = det_poly(minor);
    if constexpr (std::is_same_v<T, Rational>) {
      if (d.is_zero()) continue;
    } else {
      // Treat a determinant lost in rounding noise as identically zero.
      double entry = 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < n; ++c) {
          for (double v : minor(i, c).coefficients()) entry = std::max(entry, std::abs(v));
        }
      }
      const double noise = 1e-12 * std::pow(entry, static_cast<double>(n));
      if (std::all_of(d.coefficients().begin(), d.coefficients().end(),
                      [&](double v) { return std::abs(v) <= noise; })) {
        continue;
      }
    }
    if (d.degree() < 1) {
      throw Error(ErrorKind::InconsistentExtraParams,
                  "preference " + std::to_string(ps.equations[extra_row] + 1) +
                      " cannot be satisfied by any value of its parameter");
    }
    const T root = -d.coefficient(0) / d.coefficient(1);
    const double value = [&] {
      if constexpr (std::is_same_v<T, Rational>) {
        return to_double(root);
      } else {
        return root;
      }
    }();
    if (!(value > 0.0)) {
      throw Error(ErrorKind::InconsistentExtraParams,
                  "preference " + std::to_string(ps.equations[extra_row] + 1) +
                      " requires a non-positive parameter");
    }
    if constexpr (std::is_same_v<T, Rational>) {
      if (!first_exact) first_exact = root;
      if (root != *first_exact) all_exact = false;
    }
    out.push_back(value);
  }
  if (all_exact && first_exact) exact_value = first_exact;
  return out;
}

template <class T>
Matrix<T> substitute_impl(const ParamSystem& ps, const AlphaSolution& sol) {
  const std::size_t m = ps.base.rows();
  Matrix<T> out(m, ps.n);
  std::vector<std::optional<Number>> extra(m);
  for (const auto& e : sol.extra_params) {
    for (std::size_t r = 0; r < m; ++r) {
      if (ps.equations[r] == e.preference) extra[r] = e.value;
    }
  }
  const T alpha = convert<T>(sol.alpha);
  for (std::size_t r = 0; r < m; ++r) {
    const T scale = extra[r] ? convert<T>(*extra[r]) : convert<T>(Number(ps.multipliers[r])) * alpha;
    fill_row(out, r, ps.base, r, scale);
  }
  return out;
}

template <class T>
std::vector<T> solve_nullspace(const Matrix<T>& a) {
  const GeneralSolution<T> gs = general_solution(a);
  return particular_positive(gs);
}

void require_linear_equations(const Problem& problem) {
  if (problem.has_inequalities()) {
    throw Error(ErrorKind::NonEquationPreference, "the linear pipeline accepts equation preferences only");
  }
  if (problem.has_nonlinear()) {
    throw Error(ErrorKind::NonlinearPreferencePresent,
                "monomial preferences are handled by the nonlinear solver");
  }
}

}  // namespace

bool PriorityVector::is_exact() const {
  return !weights.empty() && std::all_of(weights.begin(), weights.end(), [](const Number& w) { return w.is_exact(); });
}

std::vector<double> PriorityVector::values() const {
  std::vector<double> out;
  out.reserve(weights.size());
  for (const auto& w : weights) out.push_back(w.value);
  return out;
}

PriorityVector PriorityVector::from(const std::vector<double>& v) {
  PriorityVector pv;
  for (double x : v) pv.weights.emplace_back(x);
  return pv;
}

PriorityVector PriorityVector::from(const std::vector<Rational>& v) {
  PriorityVector pv;
  for (const auto& x : v) pv.weights.emplace_back(x);
  return pv;
}

ParamSystem parameterize(const Problem& problem) {
  require_linear_equations(problem);
  ParamSystem ps;
  ps.n = problem.size();
  ps.base = assemble(problem);
  ps.equations = problem.equation_indices();
  ps.core_rows = problem.core_rows();
  const auto mult = problem.binding().multipliers(problem.preferences().size());
  const std::size_t m = ps.base.rows();
  ps.matrix = PolyMatrix(m, ps.n);
  for (std::size_t r = 0; r < m; ++r) {
    ps.multipliers.push_back(mult[ps.equations[r]]);
    for (std::size_t c = 0; c < ps.n; ++c) {
      const Rational& a = ps.base(r, c);
      if (a == 1) {
        ps.matrix(r, c) = RationalPoly::constant(Rational(1));
      } else if (a != 0) {
        ps.matrix(r, c) = RationalPoly::monomial(a * ps.multipliers[r], 1);
      }
    }
  }
  return ps;
}

RationalPoly parametric_equation(const ParamSystem& ps) {
  if (ps.core_rows.size() != ps.n) {
    throw Error(ErrorKind::DegenerateCore, "the core must hold exactly " + std::to_string(ps.n) +
                                               " equations, got " + std::to_string(ps.core_rows.size()));
  }
  const PolyMatrix core = ps.matrix.select_rows(ps.core_rows);
  RationalPoly eq = det_poly(core);
  if (eq.is_zero() && determinant(ps.base.select_rows(ps.core_rows)) != 0) {
    throw Error(ErrorKind::DegenerateCore,
                "the parametric equation vanishes identically although the stated core is regular");
  }
  return eq;
}

AlphaSolution solve_alpha(const ParamSystem& ps, const ConsistencyPolicy& policy) {
  AlphaSolution sol;
  try {
    sol.equation = parametric_equation(ps);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DegenerateCore) throw;
    throw Error(ErrorKind::NoPositiveRoot, std::string("no admissible alpha: ") + e.what());
  }

  if (sol.equation.is_zero()) {
    // The core is dependent for every alpha; keep the stated coefficients.
    sol.roots.emplace_back(Rational(1));
  } else {
    const auto roots = positive_roots(to_double(sol.equation));
    for (const Root& r : roots) {
      if (auto exact = exact_root_near(sol.equation, r.value)) {
        sol.roots.emplace_back(*exact);
      } else {
        sol.roots.emplace_back(r.value);
      }
    }
    if (sol.roots.empty()) {
      throw Error(ErrorKind::NoPositiveRoot, "the parametric equation has no positive root");
    }
  }

  // Largest consistency wins; on a tie the smaller root (roots are ascending).
  std::size_t best = 0;
  for (std::size_t i = 1; i < sol.roots.size(); ++i) {
    const double ci = consistency_of(sol.roots[i]).value;
    const double cb = consistency_of(sol.roots[best]).value;
    if (ci > cb * (1.0 + 1e-12)) best = i;
  }
  sol.alpha = sol.roots[best];
  sol.consistency = consistency_of(sol.alpha);
  sol.inconsistency = one_minus(sol.consistency);

  const double residual = std::abs(eval(to_double(sol.equation), sol.alpha.value));
  double scale = 1.0;
  for (const auto& c : sol.equation.coefficients()) scale = std::max(scale, std::abs(to_double(c)));
  if (residual > kResidualTol * scale) {
    throw Error(ErrorKind::Internal, "parametric equation residual " + format_double(residual) + " at alpha");
  }

  // Parameters of the rows outside the core, one at a time.
  for (std::size_t r = 0; r < ps.base.rows(); ++r) {
    if (std::find(ps.core_rows.begin(), ps.core_rows.end(), r) != ps.core_rows.end()) continue;
    std::optional<Rational> exact;
    std::vector<double> values = sol.alpha.exact
                                     ? extra_row_solutions<Rational>(ps, r, *sol.alpha.exact, exact)
                                     : extra_row_solutions<double>(ps, r, sol.alpha.value, exact);
    ExtraParam extra;
    extra.preference = ps.equations[r];
    if (values.empty()) {
      extra.value = Number(Rational(1));
    } else {
      const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
      if (*hi - *lo > kExtraParamRelTol * *hi) {
        throw Error(ErrorKind::InconsistentExtraParams,
                    "auxiliary minors disagree on the parameter of preference " +
                        std::to_string(extra.preference + 1) + ": " + format_double(*lo) + " vs " +
                        format_double(*hi));
      }
      extra.value = exact ? Number(*exact) : Number(values.front());
    }
    extra.minor_solutions = std::move(values);
    sol.extra_params.push_back(std::move(extra));
  }

  sol.discharged = policy.action == PolicyAction::Reject && sol.consistency.value < policy.threshold_c;
  return sol;
}

Matrix<double> substitute(const ParamSystem& ps, const AlphaSolution& sol) {
  return substitute_impl<double>(ps, sol);
}

std::optional<Matrix<Rational>> substitute_exact(const ParamSystem& ps, const AlphaSolution& sol) {
  if (!sol.alpha.exact) return std::nullopt;
  for (const auto& e : sol.extra_params) {
    if (!e.value.exact) return std::nullopt;
  }
  return substitute_impl<Rational>(ps, sol);
}

PriorityResult priority(const Problem& problem, const ConsistencyPolicy& policy) {
  require_linear_equations(problem);
  PriorityResult out;
  out.classification = classify(problem);

  const Matrix<Rational> a = assemble(problem);
  const auto positive = rank(a) < problem.size() ? positive_null_vector(a) : std::nullopt;
  if (positive) {
    out.alpha.consistent_branch = true;
    out.alpha.alpha = Number(Rational(1));
    out.alpha.roots = {out.alpha.alpha};
    out.alpha.consistency = Number(Rational(1));
    out.alpha.inconsistency = Number(Rational(0));
    // Secondary variables set to 1 when that is positive; with several free
    // variables it need not be, and any positive null vector is then valid.
    std::vector<Rational> x;
    try {
      x = solve_nullspace(a);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NonPositiveComponent) throw;
      x = *positive;
    }
    for (const auto& v : x) out.particular.emplace_back(v);
    out.vector = PriorityVector::from(normalize<Rational>(x));
    return out;
  }

  const ParamSystem ps = parameterize(problem);
  out.alpha = solve_alpha(ps, policy);
  if (auto exact = substitute_exact(ps, out.alpha)) {
    const auto x = solve_nullspace(*exact);
    for (const auto& v : x) out.particular.emplace_back(v);
    out.vector = PriorityVector::from(normalize<Rational>(x));
  } else {
    const auto x = solve_nullspace(substitute(ps, out.alpha));
    for (double v : x) out.particular.emplace_back(v);
    out.vector = PriorityVector::from(normalize<double>(x));
  }
  return out;
}

std::string to_string(DiscountKind kind) {
  switch (kind) {
    case DiscountKind::Ratio: return "ratio";
    case DiscountKind::Linear: return "linear";
    case DiscountKind::Monomial: return "monomial";
  }
  return "unknown";
}

std::vector<DiscountEntry> discount_report(const Problem& problem, const PriorityVector& pv) {
  const bool exact = pv.is_exact();
  const auto values = pv.values();
  auto num = [&](std::size_t i) { return exact ? *pv.weights[i].exact : rational_from_double(values[i]); };
  auto make = [&](const Rational& v) { return exact ? Number(v) : Number(to_double(v)); };

  std::vector<DiscountEntry> out;
  for (std::size_t p = 0; p < problem.preferences().size(); ++p) {
    const Preference canon = canonicalize(problem.preferences()[p]);
    DiscountEntry e;
    e.preference = p;
    if (auto view = as_pairwise(canon)) {
      e.kind = DiscountKind::Ratio;
      const Rational realized = num(view->subject) / num(view->other);
      e.stated = Number(view->ratio);
      e.realized = make(realized);
      e.factor = make(realized / view->ratio);
    } else if (const auto* lin = std::get_if<LinearPreference>(&canon)) {
      e.kind = DiscountKind::Linear;
      Rational rhs = 0;
      for (const auto& [j, c] : lin->terms) rhs += c * num(j);
      e.stated = Number(Rational(1));
      e.realized = make(num(lin->subject) / rhs);
      e.factor = e.realized;
    } else if (const auto* mono = std::get_if<MonomialPreference>(&canon)) {
      e.kind = DiscountKind::Monomial;
      Rational rhs = mono->coefficient;
      for (const auto& [j, k] : mono->exponents) {
        for (unsigned t = 0; t < k; ++t) rhs *= num(j);
      }
      e.stated = Number(Rational(1));
      e.realized = make(num(mono->subject) / rhs);
      e.factor = e.realized;
    } else {
      continue;
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::optional<PriorityVector> apply_fallback(Fallback fallback, std::size_t n) {
  if (fallback != Fallback::Uniform) return std::nullopt;
  return PriorityVector::from(std::vector<Rational>(n, Rational(1) / Rational(n)));
}

}  // namespace alphad
