#pragma once

#include "alphad/classifier.hpp"
#include "alphad/linear_core.hpp"
#include "alphad/polynomial.hpp"
#include "alphad/preference_model.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace alphad {

/// Strictly positive weights summing to 1; exact when every weight is.
struct PriorityVector {
  std::vector<Number> weights;

  [[nodiscard]] std::size_t size() const { return weights.size(); }
  [[nodiscard]] bool is_exact() const;
  [[nodiscard]] std::vector<double> values() const;
  static PriorityVector from(const std::vector<double>& v);
  static PriorityVector from(const std::vector<Rational>& v);
};

/// Parameterized system: row r belongs to preference equations[r]; the
/// subject entry is 1 and every right-hand coefficient a becomes -a*c*alpha.
struct ParamSystem {
  std::size_t n = 0;
  PolyMatrix matrix;
  std::vector<std::size_t> equations;   // preference index per row
  std::vector<Rational> multipliers;    // c per row
  std::vector<std::size_t> core_rows;   // rows forming the square core
  Matrix<Rational> base;                // the unparameterized system
};

enum class PolicyAction { ReportOnly, Reject };

struct ConsistencyPolicy {
  double threshold_c = 0.0;
  PolicyAction action = PolicyAction::ReportOnly;
};

/// Parameter of a preference outside the core, solved after the core alpha.
struct ExtraParam {
  std::size_t preference = 0;
  Number value;
  /// One solution per auxiliary minor containing the extra row.
  std::vector<double> minor_solutions;
};

struct AlphaSolution {
  RationalPoly equation;        // zero when the core is dependent for every alpha
  std::vector<Number> roots;    // positive roots, ascending
  Number alpha;
  Number consistency;           // c = min(alpha, 1/alpha)
  Number inconsistency;         // 1 - c
  std::vector<ExtraParam> extra_params;
  bool consistent_branch = false;
  bool discharged = false;      // c below the policy threshold with action Reject
};

ParamSystem parameterize(const Problem& problem);

/// Determinant of the core rows as a polynomial in alpha. Throws
/// DegenerateCore when the core is not square or its determinant vanishes
/// identically although the unparameterized core is regular.
RationalPoly parametric_equation(const ParamSystem& ps);

AlphaSolution solve_alpha(const ParamSystem& ps, const ConsistencyPolicy& policy = {});

/// The system with alpha and the extra parameters substituted.
Matrix<double> substitute(const ParamSystem& ps, const AlphaSolution& sol);
std::optional<Matrix<Rational>> substitute_exact(const ParamSystem& ps, const AlphaSolution& sol);

struct PriorityResult {
  PriorityVector vector;
  AlphaSolution alpha;
  ClassificationReport classification;
  /// Unnormalized particular solution (secondary variables set to 1).
  std::vector<Number> particular;
};

/// Full pipeline for a linear equation-only problem.
PriorityResult priority(const Problem& problem, const ConsistencyPolicy& policy = {});

enum class DiscountKind { Ratio, Linear, Monomial };

struct DiscountEntry {
  std::size_t preference = 0;
  DiscountKind kind = DiscountKind::Ratio;
  /// Stated coefficient (ratio kind) or 1 (linear and monomial kinds).
  Number stated;
  /// Realized ratio (ratio kind) or realized common scale of the right-hand side.
  Number realized;
  /// realized / stated
  Number factor;
};

std::string to_string(DiscountKind kind);

std::vector<DiscountEntry> discount_report(const Problem& problem, const PriorityVector& pv);

enum class Fallback { None, Uniform, Ignorance };

/// Replacement weights for a strongly inconsistent problem. Uniform gives
/// 1/n each. Ignorance puts all mass on the whole frame, which has no
/// per-criterion weights, so it yields nullopt just like None.
std::optional<PriorityVector> apply_fallback(Fallback fallback, std::size_t n);

}  // namespace alphad
