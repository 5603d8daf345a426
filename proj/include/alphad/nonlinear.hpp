#pragma once

#include "alphad/preference_model.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace alphad {

/// x = coefficient * z^exponent
struct MonomialTerm {
  Rational coefficient;
  unsigned exponent = 0;
  friend bool operator==(const MonomialTerm&, const MonomialTerm&) = default;
};

struct MonomialSolution {
  std::size_t free_var = 0;
  std::vector<MonomialTerm> components;
};

/// Back-substitution of single-term linear and monomial equations down to a
/// single free criterion. Every other criterion must be the subject of
/// exactly one equation. Throws OverDetermined (no free criterion),
/// MultipleFreeVars, NotTriangular.
MonomialSolution solve_triangular(const Problem& problem);

/// An open interval (lo, hi) of the free variable, or the single point lo
/// when `point` is set. A missing `hi` means unbounded.
struct Regime {
  bool point = false;
  Number lo;
  std::optional<Number> hi;
  /// Criteria in decreasing order; criteria in the same group are equal.
  std::vector<std::vector<std::size_t>> ordering;
};

struct RegimeReport {
  Number domain_lo;
  std::optional<Number> domain_hi;
  /// Values of the free variable inside the domain where two components meet.
  std::vector<Number> breakpoints;
  std::vector<Regime> regimes;
};

/// Throws EmptyDomain when the inequalities admit no positive value, and
/// Internal if the symbolic ordering disagrees with a numeric evaluation.
RegimeReport regime_analysis(const MonomialSolution& sol, std::span<const InequalityPreference> inequalities);

/// Inequality preferences of a problem, in order.
std::vector<InequalityPreference> inequalities_of(const Problem& problem);

/// "y>z=x" using criterion names.
std::string ordering_string(const Regime& regime, const CriteriaSet& criteria);

/// "(0, 0.1)", "z = 0.1", "(0.5, inf)" with the free variable's name.
std::string interval_string(const Regime& regime, const std::string& free_name);

/// Components at the given free value, normalized to sum 1. Requires value > 0.
std::vector<double> normalized_at(const MonomialSolution& sol, double value);

}  // namespace alphad
