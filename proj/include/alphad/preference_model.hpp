#pragma once

#include "alphad/linear_core.hpp"
#include "alphad/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace alphad {

/// Ordered, duplicate-free list of criterion names (at least two).
class CriteriaSet {
 public:
  explicit CriteriaSet(std::vector<std::string> names);

  [[nodiscard]] std::size_t size() const { return names_.size(); }
  [[nodiscard]] const std::string& name(std::size_t index) const { return names_.at(index); }
  [[nodiscard]] const std::vector<std::string>& names() const { return names_; }
  [[nodiscard]] std::optional<std::size_t> find(std::string_view name) const;

  friend bool operator==(const CriteriaSet& a, const CriteriaSet& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

/// x[num] / x[den] = value
struct RatioPreference {
  std::size_t num = 0;
  std::size_t den = 0;
  Rational value;
  friend bool operator==(const RatioPreference&, const RatioPreference&) = default;
};

/// x[subject] = sum over terms of coefficient * x[index]
struct LinearPreference {
  std::size_t subject = 0;
  std::map<std::size_t, Rational> terms;
  friend bool operator==(const LinearPreference&, const LinearPreference&) = default;
};

/// x[subject] = coefficient * prod x[index]^exponent
struct MonomialPreference {
  std::size_t subject = 0;
  Rational coefficient;
  std::map<std::size_t, unsigned> exponents;
  friend bool operator==(const MonomialPreference&, const MonomialPreference&) = default;
};

enum class Relation { StrictLess, StrictGreater };

struct InequalityPreference {
  std::size_t lhs = 0;
  std::size_t rhs = 0;
  Relation relation = Relation::StrictLess;
  friend bool operator==(const InequalityPreference&, const InequalityPreference&) = default;
};

using Preference =
    std::variant<RatioPreference, LinearPreference, MonomialPreference, InequalityPreference>;

/// Expert-opinion rule: parameter of preference `target` equals
/// `factor` times the parameter of preference `source` (0-based indices).
struct BindRule {
  std::size_t target = 0;
  std::size_t source = 0;
  Rational factor;
  friend bool operator==(const BindRule&, const BindRule&) = default;
};

/// How the per-preference parameters relate to the single base parameter.
/// With no rules every multiplier is 1 (Fairness Principle).
struct ParamBinding {
  std::vector<BindRule> rules;
  /// Explicit fairness core (0-based preference indices); default is the first n equations.
  std::optional<std::vector<std::size_t>> core;

  /// Resolved multipliers c_i such that alpha_i = c_i * alpha.
  [[nodiscard]] std::vector<Rational> multipliers(std::size_t preference_count) const;

  friend bool operator==(const ParamBinding&, const ParamBinding&) = default;
};

class Problem {
 public:
  /// Validates every invariant; throws Error(InvalidProblem) otherwise.
  Problem(CriteriaSet criteria, std::vector<Preference> preferences, ParamBinding binding = {});

  [[nodiscard]] const CriteriaSet& criteria() const { return criteria_; }
  [[nodiscard]] const std::vector<Preference>& preferences() const { return preferences_; }
  [[nodiscard]] const ParamBinding& binding() const { return binding_; }
  [[nodiscard]] std::size_t size() const { return criteria_.size(); }

  /// Same problem with the binding rules dropped (pure fairness).
  [[nodiscard]] Problem with_fairness() const;

  [[nodiscard]] bool has_nonlinear() const;
  [[nodiscard]] bool has_inequalities() const;
  /// Indices of equation-type preferences, in order.
  [[nodiscard]] std::vector<std::size_t> equation_indices() const;
  /// Effective fairness core as indices into equation_indices() order.
  [[nodiscard]] std::vector<std::size_t> core_rows() const;

  /// Structural equality after canonicalization of ratio preferences.
  friend bool operator==(const Problem& a, const Problem& b);

 private:
  CriteriaSet criteria_;
  std::vector<Preference> preferences_;
  ParamBinding binding_;
};

LinearPreference canonicalize(const RatioPreference& pref);
LinearPreference canonicalize(const LinearPreference& pref);
/// Ratio preferences become linear; other kinds pass through.
Preference canonicalize(const Preference& pref);

/// Single-term linear (or ratio) preference: x[subject] = k * x[other].
struct PairwiseView {
  std::size_t subject;
  std::size_t other;
  Rational ratio;
};
std::optional<PairwiseView> as_pairwise(const Preference& pref);

/// m x n matrix with row e_subject - sum a_j e_j per equation preference.
Matrix<Rational> assemble(const Problem& problem);

/// The three-criteria cyclic pattern x = t y, x = z / t, y = t z.
Problem make_cyclic_example(const Rational& t);

}  // namespace alphad
