#include "alphad/nonlinear.hpp"

#include "alphad/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace alphad {

namespace {

constexpr unsigned kMaxExponent = 64;
constexpr double kEqualRelTol = 1e-12;
constexpr double kNumericRelTol = 1e-9;

Rational power(const Rational& base, unsigned e) {
  Rational out = 1;
  for (unsigned k = 0; k < e; ++k) out *= base;
  return out;
}

// Positive real k-th root of r, exact when it is rational.
Number kth_root(const Rational& r, unsigned k) {
  if (k == 1) return Number(r);
  const double approx = std::pow(to_double(r), 1.0 / static_cast<double>(k));
  for (const Rational& c : convergents(approx, 1'000'000'000)) {
    if (power(c, k) == r) return Number(c);
  }
  return Number(approx);
}

int compare(const Number& a, const Number& b) {
  if (a.exact && b.exact) return *a.exact < *b.exact ? -1 : (*a.exact > *b.exact ? 1 : 0);
  if (std::abs(a.value - b.value) <= kEqualRelTol * std::max(std::abs(a.value), std::abs(b.value))) return 0;
  return a.value < b.value ? -1 : 1;
}

// Where c_a z^d_a = c_b z^d_b; requires d_a != d_b.
Number crossing(const MonomialTerm& a, const MonomialTerm& b) {
  if (a.exponent > b.exponent) return kth_root(b.coefficient / a.coefficient, a.exponent - b.exponent);
  return kth_root(a.coefficient / b.coefficient, b.exponent - a.exponent);
}

// Where the free variable sits relative to a crossing point.
enum class Side { Below, At, Above };

// Sign of x_a - x_b for a free value on `side` of their crossing.
int sign_of_difference(const MonomialTerm& a, const MonomialTerm& b, Side side) {
  if (a.exponent == b.exponent) {
    return a.coefficient < b.coefficient ? -1 : (a.coefficient > b.coefficient ? 1 : 0);
  }
  if (side == Side::At) return 0;
  const bool a_steeper = a.exponent > b.exponent;
  return (side == Side::Above) == a_steeper ? 1 : -1;
}

double sample_point(const Regime& r) {
  if (r.point) return r.lo.value;
  if (!r.hi) return r.lo.value > 0.0 ? 2.0 * r.lo.value : 1.0;
  if (r.lo.value <= 0.0) return r.hi->value / 2.0;
  return std::sqrt(r.lo.value * r.hi->value);
}

std::vector<std::vector<std::size_t>> group(const std::vector<std::size_t>& order,
                                            const std::function<int(std::size_t, std::size_t)>& sign) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t k : order) {
    if (!out.empty() && sign(out.back().front(), k) == 0) {
      out.back().push_back(k);
    } else {
      out.push_back({k});
    }
  }
  return out;
}

void check_numeric(const MonomialSolution& sol, const Regime& r) {
  const double z = sample_point(r);
  std::vector<double> v;
  for (const auto& c : sol.components) v.push_back(to_double(c.coefficient) * std::pow(z, c.exponent));
  auto equal = [&](double a, double b) { return std::abs(a - b) <= kNumericRelTol * std::max(a, b); };
  for (std::size_t g = 0; g < r.ordering.size(); ++g) {
    for (std::size_t k : r.ordering[g]) {
      if (!equal(v[k], v[r.ordering[g].front()])) {
        throw Error(ErrorKind::Internal, "regime ordering disagrees with numeric evaluation (ties)");
      }
      if (g > 0 && !(v[r.ordering[g - 1].front()] > v[k]) ) {
        throw Error(ErrorKind::Internal, "regime ordering disagrees with numeric evaluation");
      }
    }
  }
}

}  // namespace

MonomialSolution solve_triangular(const Problem& problem) {
  const std::size_t n = problem.size();
  std::vector<std::optional<MonomialPreference>> definition(n);
  for (std::size_t p = 0; p < problem.preferences().size(); ++p) {
    const Preference canon = canonicalize(problem.preferences()[p]);
    MonomialPreference m;
    if (const auto* lin = std::get_if<LinearPreference>(&canon)) {
      if (lin->terms.size() != 1) {
        throw Error(ErrorKind::NotTriangular,
                    "preference " + std::to_string(p + 1) + " is a sum and cannot be substituted");
      }
      m.subject = lin->subject;
      m.coefficient = lin->terms.begin()->second;
      m.exponents[lin->terms.begin()->first] = 1;
    } else if (const auto* mono = std::get_if<MonomialPreference>(&canon)) {
      m = *mono;
    } else {
      continue;
    }
    if (definition[m.subject]) {
      throw Error(ErrorKind::NotTriangular,
                  "criterion " + problem.criteria().name(m.subject) + " is defined by more than one equation");
    }
    definition[m.subject] = std::move(m);
  }

  std::vector<std::size_t> free;
  for (std::size_t k = 0; k < n; ++k) {
    if (!definition[k]) free.push_back(k);
  }
  if (free.empty()) {
    throw Error(ErrorKind::OverDetermined, "every criterion is fixed by an equation; no free criterion remains");
  }
  if (free.size() > 1) {
    throw Error(ErrorKind::MultipleFreeVars,
                "more than one free criterion: " + problem.criteria().name(free[0]) + ", " +
                    problem.criteria().name(free[1]));
  }

  MonomialSolution sol;
  sol.free_var = free.front();
  sol.components.assign(n, MonomialTerm{});
  std::vector<int> state(n, 0);  // 0 pending, 1 on stack, 2 resolved
  std::function<void(std::size_t)> resolve = [&](std::size_t k) {
    if (state[k] == 2) return;
    if (state[k] == 1) {
      throw Error(ErrorKind::NotTriangular,
                  "criterion " + problem.criteria().name(k) + " depends on itself through substitution");
    }
    if (!definition[k]) {
      sol.components[k] = {Rational(1), 1};
      state[k] = 2;
      return;
    }
    state[k] = 1;
    MonomialTerm t{definition[k]->coefficient, 0};
    for (const auto& [j, e] : definition[k]->exponents) {
      resolve(j);
      t.coefficient *= power(sol.components[j].coefficient, e);
      const unsigned long long d = t.exponent + static_cast<unsigned long long>(sol.components[j].exponent) * e;
      if (d > kMaxExponent) {
        throw Error(ErrorKind::DegreeTooHigh, "substitution produces an exponent above " +
                                                  std::to_string(kMaxExponent));
      }
      t.exponent = static_cast<unsigned>(d);
    }
    sol.components[k] = t;
    state[k] = 2;
  };
  for (std::size_t k = 0; k < n; ++k) resolve(k);

  for (std::size_t k = 0; k < n; ++k) {
    if (!definition[k]) continue;
    Rational c = definition[k]->coefficient;
    unsigned long long d = 0;
    for (const auto& [j, e] : definition[k]->exponents) {
      c *= power(sol.components[j].coefficient, e);
      d += static_cast<unsigned long long>(sol.components[j].exponent) * e;
    }
    if (c != sol.components[k].coefficient || d != sol.components[k].exponent) {
      throw Error(ErrorKind::Internal, "substituted solution does not satisfy its equation");
    }
  }
  return sol;
}

std::vector<InequalityPreference> inequalities_of(const Problem& problem) {
  std::vector<InequalityPreference> out;
  for (const auto& p : problem.preferences()) {
    if (const auto* q = std::get_if<InequalityPreference>(&p)) out.push_back(*q);
  }
  return out;
}

RegimeReport regime_analysis(const MonomialSolution& sol, std::span<const InequalityPreference> inequalities) {
  const auto& comp = sol.components;
  const std::size_t n = comp.size();
  RegimeReport report;
  report.domain_lo = Number(Rational(0));

  for (const auto& ineq : inequalities) {
    // Normalize to small < large.
    const std::size_t small = ineq.relation == Relation::StrictLess ? ineq.lhs : ineq.rhs;
    const std::size_t large = ineq.relation == Relation::StrictLess ? ineq.rhs : ineq.lhs;
    const MonomialTerm& s = comp.at(small);
    const MonomialTerm& l = comp.at(large);
    if (s.exponent == l.exponent) {
      if (!(s.coefficient < l.coefficient)) {
        throw Error(ErrorKind::EmptyDomain, "inequality can never hold for a positive free value");
      }
      continue;
    }
    const Number b = crossing(s, l);
    if (s.exponent > l.exponent) {
      if (!report.domain_hi || compare(b, *report.domain_hi) < 0) report.domain_hi = b;
    } else if (compare(b, report.domain_lo) > 0) {
      report.domain_lo = b;
    }
  }
  if (report.domain_hi && compare(report.domain_lo, *report.domain_hi) >= 0) {
    throw Error(ErrorKind::EmptyDomain, "the inequalities admit no positive value of the free criterion");
  }

  auto inside = [&](const Number& z) {
    return compare(z, report.domain_lo) > 0 && (!report.domain_hi || compare(z, *report.domain_hi) < 0);
  };
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (comp[a].exponent == comp[b].exponent) continue;
      const Number z = crossing(comp[a], comp[b]);
      if (!inside(z)) continue;
      const bool seen = std::any_of(report.breakpoints.begin(), report.breakpoints.end(),
                                    [&](const Number& q) { return compare(q, z) == 0; });
      if (!seen) report.breakpoints.push_back(z);
    }
  }
  std::sort(report.breakpoints.begin(), report.breakpoints.end(),
            [](const Number& a, const Number& b) { return compare(a, b) < 0; });

  std::vector<std::size_t> previous(n);
  for (std::size_t k = 0; k < n; ++k) previous[k] = k;

  auto add_interval = [&](const Number& lo, const std::optional<Number>& hi) {
    Regime r;
    r.lo = lo;
    r.hi = hi;
    auto sign = [&](std::size_t a, std::size_t b) {
      if (comp[a].exponent == comp[b].exponent) return sign_of_difference(comp[a], comp[b], Side::At);
      const Number z = crossing(comp[a], comp[b]);
      const Side side = (hi && compare(z, *hi) >= 0) ? Side::Below : Side::Above;
      return sign_of_difference(comp[a], comp[b], side);
    };
    std::vector<std::size_t> order = previous;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sign(a, b) > 0; });
    r.ordering = group(order, sign);
    check_numeric(sol, r);
    previous = order;
    report.regimes.push_back(std::move(r));
  };
  auto add_point = [&](const Number& p) {
    Regime r;
    r.point = true;
    r.lo = p;
    r.hi = p;
    auto sign = [&](std::size_t a, std::size_t b) {
      if (comp[a].exponent == comp[b].exponent) return sign_of_difference(comp[a], comp[b], Side::At);
      const int c = compare(p, crossing(comp[a], comp[b]));
      return sign_of_difference(comp[a], comp[b], c < 0 ? Side::Below : (c > 0 ? Side::Above : Side::At));
    };
    std::vector<std::size_t> order = previous;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sign(a, b) > 0; });
    r.ordering = group(order, sign);
    check_numeric(sol, r);
    report.regimes.push_back(std::move(r));
  };

  Number lo = report.domain_lo;
  for (const Number& b : report.breakpoints) {
    add_interval(lo, b);
    add_point(b);
    lo = b;
  }
  add_interval(lo, report.domain_hi);
  return report;
}

std::string ordering_string(const Regime& regime, const CriteriaSet& criteria) {
  std::string out;
  for (std::size_t g = 0; g < regime.ordering.size(); ++g) {
    if (g > 0) out += '>';
    for (std::size_t k = 0; k < regime.ordering[g].size(); ++k) {
      if (k > 0) out += '=';
      out += criteria.name(regime.ordering[g][k]);
    }
  }
  return out;
}

std::string interval_string(const Regime& regime, const std::string& free_name) {
  if (regime.point) return free_name + " = " + format_double(regime.lo.value);
  return "(" + format_double(regime.lo.value) + ", " + (regime.hi ? format_double(regime.hi->value) : "inf") +
         ")";
}

std::vector<double> normalized_at(const MonomialSolution& sol, double value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorKind::InvalidProblem, "the free criterion must be evaluated at a positive value");
  }
  std::vector<double> v;
  double s = 0.0;
  for (const auto& c : sol.components) {
    v.push_back(to_double(c.coefficient) * std::pow(value, c.exponent));
    s += v.back();
  }
  for (double& x : v) x /= s;
  return v;
}

}  // namespace alphad
