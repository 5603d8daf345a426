#include "alphad/preference_model.hpp"

#include "alphad/error.hpp"

#include <algorithm>
#include <set>

namespace alphad {

namespace {

[[noreturn]] void invalid(const std::string& message) {
  throw Error(ErrorKind::InvalidProblem, message);
}

bool valid_name(std::string_view name) {
  if (name.empty()) return false;
  auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(name.front())) return false;
  return std::all_of(name.begin(), name.end(), [&](char c) { return alpha(c) || digit(c) || c == '_'; });
}

bool is_equation(const Preference& p) { return !std::holds_alternative<InequalityPreference>(p); }

}  // namespace

CriteriaSet::CriteriaSet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() < 2) invalid("at least two criteria are required");
  if (names_.size() > kMaxDimension) {
    invalid("at most " + std::to_string(kMaxDimension) + " criteria are supported");
  }
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!valid_name(names_[i])) invalid("invalid criterion name '" + names_[i] + "'");
    if (!index_.emplace(names_[i], i).second) invalid("duplicate criterion '" + names_[i] + "'");
  }
}

std::optional<std::size_t> CriteriaSet::find(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Rational> ParamBinding::multipliers(std::size_t preference_count) const {
  std::vector<std::optional<std::size_t>> rule_for(preference_count);
  for (std::size_t r = 0; r < rules.size(); ++r) {
    if (rules[r].target < preference_count) rule_for[rules[r].target] = r;
  }
  std::vector<Rational> out(preference_count, Rational(1));
  std::vector<bool> done(preference_count, false);
  for (std::size_t i = 0; i < preference_count; ++i) {
    // Follow the chain target -> source until an unbound or resolved parameter.
    std::vector<std::size_t> chain;
    std::size_t cur = i;
    while (!done[cur] && rule_for[cur]) {
      chain.push_back(cur);
      cur = rules[*rule_for[cur]].source;
      if (chain.size() > preference_count) invalid("cyclic parameter bindings");
    }
    Rational base = out[cur];
    done[cur] = true;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      base = rules[*rule_for[*it]].factor * base;
      out[*it] = base;
      done[*it] = true;
    }
  }
  return out;
}

Problem::Problem(CriteriaSet criteria, std::vector<Preference> preferences, ParamBinding binding)
    : criteria_(std::move(criteria)), preferences_(std::move(preferences)), binding_(std::move(binding)) {
  const std::size_t n = criteria_.size();
  auto check_index = [&](std::size_t i) {
    if (i >= n) invalid("criterion index " + std::to_string(i) + " out of range");
  };
  bool any_equation = false;
  for (const auto& pref : preferences_) {
    any_equation |= is_equation(pref);
    std::visit(
        [&](const auto& p) {
          using P = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<P, RatioPreference>) {
            check_index(p.num);
            check_index(p.den);
            if (p.num == p.den) invalid("ratio preference relates a criterion to itself");
            if (p.value <= 0) invalid("ratio value must be positive");
          } else if constexpr (std::is_same_v<P, LinearPreference>) {
            check_index(p.subject);
            if (p.terms.empty()) invalid("linear preference needs at least one term");
            for (const auto& [j, a] : p.terms) {
              check_index(j);
              if (j == p.subject) invalid("subject appears on the right-hand side");
              if (a <= 0) invalid("linear coefficients must be positive");
            }
          } else if constexpr (std::is_same_v<P, MonomialPreference>) {
            check_index(p.subject);
            if (p.exponents.empty()) invalid("monomial preference needs at least one factor");
            if (p.coefficient <= 0) invalid("monomial coefficient must be positive");
            for (const auto& [j, e] : p.exponents) {
              check_index(j);
              if (j == p.subject) invalid("subject appears on the right-hand side");
              if (e == 0) invalid("monomial exponents must be positive");
            }
          } else {
            check_index(p.lhs);
            check_index(p.rhs);
            if (p.lhs == p.rhs) invalid("inequality relates a criterion to itself");
          }
        },
        pref);
  }
  if (!any_equation) invalid("at least one equation-type preference is required");

  // x = k * y^1 is linear; keep one representation so equality and routing agree.
  for (auto& pref : preferences_) {
    if (const auto* mono = std::get_if<MonomialPreference>(&pref)) {
      if (mono->exponents.size() == 1 && mono->exponents.begin()->second == 1) {
        pref = LinearPreference{mono->subject, {{mono->exponents.begin()->first, mono->coefficient}}};
      }
    }
  }

  const std::size_t m = preferences_.size();
  std::set<std::size_t> bound;
  for (const auto& rule : binding_.rules) {
    if (rule.target >= m || rule.source >= m) invalid("binding refers to a missing preference");
    if (rule.target == rule.source) invalid("binding relates a parameter to itself");
    if (rule.factor <= 0) invalid("binding factor must be positive");
    if (!bound.insert(rule.target).second) invalid("parameter bound twice");
  }
  (void)binding_.multipliers(m);  // rejects cycles

  if (binding_.core) {
    const auto& core = *binding_.core;
    if (core.empty()) invalid("core must not be empty");
    std::set<std::size_t> seen;
    for (std::size_t i : core) {
      if (i >= m) invalid("core refers to a missing preference");
      if (!is_equation(preferences_[i])) invalid("core preferences must be equations");
      if (!seen.insert(i).second) invalid("core lists a preference twice");
    }
  }
}

Problem Problem::with_fairness() const {
  ParamBinding fair;
  fair.core = binding_.core;
  return Problem(criteria_, preferences_, fair);
}

bool Problem::has_nonlinear() const {
  return std::any_of(preferences_.begin(), preferences_.end(),
                     [](const Preference& p) { return std::holds_alternative<MonomialPreference>(p); });
}

bool Problem::has_inequalities() const {
  return std::any_of(preferences_.begin(), preferences_.end(),
                     [](const Preference& p) { return std::holds_alternative<InequalityPreference>(p); });
}

std::vector<std::size_t> Problem::equation_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < preferences_.size(); ++i) {
    if (is_equation(preferences_[i])) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> Problem::core_rows() const {
  const auto eq = equation_indices();
  std::vector<std::size_t> rows;
  if (binding_.core) {
    for (std::size_t pref : *binding_.core) {
      rows.push_back(static_cast<std::size_t>(std::find(eq.begin(), eq.end(), pref) - eq.begin()));
    }
    std::sort(rows.begin(), rows.end());
    return rows;
  }
  for (std::size_t r = 0; r < std::min(eq.size(), size()); ++r) rows.push_back(r);
  return rows;
}

bool operator==(const Problem& a, const Problem& b) {
  if (!(a.criteria_ == b.criteria_) || !(a.binding_ == b.binding_) ||
      a.preferences_.size() != b.preferences_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.preferences_.size(); ++i) {
    if (!(canonicalize(a.preferences_[i]) == canonicalize(b.preferences_[i]))) return false;
  }
  return true;
}

LinearPreference canonicalize(const RatioPreference& pref) {
  LinearPreference out;
  out.subject = pref.num;
  out.terms.emplace(pref.den, pref.value);
  return out;
}

LinearPreference canonicalize(const LinearPreference& pref) { return pref; }

Preference canonicalize(const Preference& pref) {
  if (const auto* r = std::get_if<RatioPreference>(&pref)) return canonicalize(*r);
  return pref;
}

std::optional<PairwiseView> as_pairwise(const Preference& pref) {
  if (const auto* r = std::get_if<RatioPreference>(&pref)) return PairwiseView{r->num, r->den, r->value};
  if (const auto* l = std::get_if<LinearPreference>(&pref); l && l->terms.size() == 1) {
    return PairwiseView{l->subject, l->terms.begin()->first, l->terms.begin()->second};
  }
  return std::nullopt;
}

Matrix<Rational> assemble(const Problem& problem) {
  const auto eq = problem.equation_indices();
  if (problem.has_inequalities()) {
    throw Error(ErrorKind::NonEquationPreference, "inequalities cannot enter the linear system");
  }
  Matrix<Rational> a(eq.size(), problem.size());
  for (std::size_t r = 0; r < eq.size(); ++r) {
    const Preference canon = canonicalize(problem.preferences()[eq[r]]);
    const auto* lin = std::get_if<LinearPreference>(&canon);
    if (!lin) {
      throw Error(ErrorKind::NonlinearPreferencePresent,
                  "preference " + std::to_string(eq[r] + 1) + " is not linear");
    }
    a(r, lin->subject) = 1;
    for (const auto& [j, coeff] : lin->terms) a(r, j) = -coeff;
  }
  return a;
}

Problem make_cyclic_example(const Rational& t) {
  if (t <= 0) {
    throw Error(ErrorKind::NonPositiveParameter, "cyclic example needs t > 0, got " + to_string(t));
  }
  CriteriaSet criteria({"C1", "C2", "C3"});
  std::vector<Preference> prefs{
      RatioPreference{0, 1, t},
      RatioPreference{0, 2, Rational(1) / t},
      RatioPreference{1, 2, t},
  };
  return Problem(std::move(criteria), std::move(prefs));
}

}  // namespace alphad
