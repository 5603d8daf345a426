#pragma once

#include "alphad/ahp.hpp"
#include "alphad/alpha_solver.hpp"
#include "alphad/classifier.hpp"
#include "alphad/error_functional.hpp"
#include "alphad/nonlinear.hpp"
#include "alphad/preference_model.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace alphad {

struct AhpBlock {
  std::optional<AhpResult> result;
  /// Realized ratio factors of the AHP vector against the stated ratios.
  std::vector<DiscountEntry> discounts;
  /// Why AHP could not run (for example a non-pairwise preference).
  std::optional<std::string> error;
};

struct ErrorMinBlock {
  ErrorMinResult result;
  /// Error of the alpha-discounting vector, when one exists.
  std::optional<double> alpha_d_value;
};

struct RegimeBlock {
  MonomialSolution solution;
  RegimeReport report;
  std::optional<double> at;
  std::vector<double> at_vector;
};

enum class PrioritySource { AlphaDiscounting, UniformFallback, Ignorance };

struct Report {
  std::string command;
  std::optional<Problem> problem;
  std::optional<ClassificationReport> classification;
  std::optional<AlphaSolution> alpha;
  std::optional<PriorityVector> priority;
  PrioritySource source = PrioritySource::AlphaDiscounting;
  std::vector<DiscountEntry> discounts;
  std::optional<AhpBlock> ahp;
  std::optional<ErrorMinBlock> error_min;
  std::optional<RegimeBlock> regimes;
  std::vector<std::string> warnings;
};

/// One JSON document; every top-level key is always present (null when the
/// block does not apply). Numbers carry 12 significant digits.
nlohmann::json to_json(const Report& report);

/// Canonical serialization: sorted keys, two-space indent, trailing newline.
std::string dump_canonical(const nlohmann::json& doc);

std::string render_text(const Report& report);

/// "x[1] = 81 x[3] via 1, 3" using criterion names and 1-based preference numbers.
std::string describe(const DerivedRelation& rel, const CriteriaSet& criteria);

}  // namespace alphad
