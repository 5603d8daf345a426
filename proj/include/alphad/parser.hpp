#pragma once

#include "alphad/preference_model.hpp"

#include <string>
#include <string_view>

namespace alphad {

/// Parses the line-based problem format:
///
///   # comment
///   criteria: C1 C2 C3
///   pref: C1 = 2 C2 + 3 C3        linear
///   pref: C2 / C1 = 1/2           ratio (becomes C2 = 1/2 C1)
///   pref: C1 = 2 C2 * C3          monomial
///   pref: C1 < C3                 strict inequality
///   bind: a2 = 2 a1               alpha_2 = 2 alpha_1 (1-based preference numbers)
///   core: 1 2 3                   fairness core preferences
///
/// Throws ParseError with a 1-based line and column.
Problem parse_problem(std::string_view text);

/// Canonical text; parse_problem(format_problem(p)) == p.
std::string format_problem(const Problem& problem);

/// One preference rendered in the file syntax without the `pref:` keyword.
std::string format_preference(const Problem& problem, const Preference& pref);

}  // namespace alphad
