#pragma once

#include "alphad/preference_model.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace alphad {

/// x[i] = ratio * x[j], obtained by chaining the preferences in `trail`
/// (0-based preference indices, each used at most once). i == j is a
/// self-relation.
struct DerivedRelation {
  std::size_t i = 0;
  std::size_t j = 0;
  double ratio = 1.0;
  std::vector<std::size_t> trail;
};

enum class Label { Consistent, WeakInconsistent, StrongInconsistent };
enum class Rule { WD1, WD2, WD3, SD4 };

std::string to_string(Label label);
std::string to_string(Rule rule);

struct Witness {
  Rule rule = Rule::WD3;
  DerivedRelation first;
  std::optional<DerivedRelation> second;  // absent for WD3 self-relations
};

struct ClassificationReport {
  Label label = Label::Consistent;
  std::vector<Rule> rules_fired;  // sorted, unique
  std::vector<Witness> witnesses;
  /// Substitution search was cut short; a clean result is then reported as weak.
  bool depth_exceeded = false;
  /// For square systems: whether "det(A) == 0 with a strictly positive null
  /// vector" agrees with a Consistent label.
  std::optional<bool> determinant_agrees;
};

struct DerivationResult {
  std::vector<DerivedRelation> relations;
  bool truncated = false;
};

/// Substitution closure: every simple path of pairwise preferences up to
/// `max_depth` links, plus full elimination of the right-hand side of each
/// multi-term linear preference in favour of a single criterion.
DerivationResult derive_relations(const Problem& problem, std::size_t max_depth);

/// Requires a linear, equation-only problem. `max_depth` defaults to the
/// number of criteria.
ClassificationReport classify(const Problem& problem, std::optional<std::size_t> max_depth = std::nullopt);

}  // namespace alphad
