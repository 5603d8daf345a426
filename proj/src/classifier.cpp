#include "alphad/classifier.hpp"

#include "alphad/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace alphad {

namespace {

constexpr double kRatioTol = 1e-9;
constexpr std::size_t kRelationBudget = 200'000;

struct Edge {
  std::size_t to;
  double factor;  // x[from] = factor * x[to]
  std::size_t pref;
};

bool uses(const std::vector<std::size_t>& trail, std::size_t pref) {
  return std::find(trail.begin(), trail.end(), pref) != trail.end();
}

class Deriver {
 public:
  Deriver(const Problem& problem, std::size_t max_depth)
      : problem_(problem), max_depth_(max_depth), adjacency_(problem.size()) {
    for (std::size_t p = 0; p < problem.preferences().size(); ++p) {
      if (auto view = as_pairwise(problem.preferences()[p])) {
        const double k = to_double(view->ratio);
        adjacency_[view->subject].push_back({view->other, k, p});
        adjacency_[view->other].push_back({view->subject, 1.0 / k, p});
      }
    }
  }

  DerivationResult run() {
    for (std::size_t start = 0; start < problem_.size(); ++start) {
      std::vector<bool> visited(problem_.size(), false);
      visited[start] = true;
      std::vector<std::size_t> trail;
      walk(start, start, 1.0, trail, visited);
    }
    substitute_linear();
    return std::move(result_);
  }

 private:
  bool full() {
    if (result_.relations.size() >= kRelationBudget) {
      result_.truncated = true;
      return true;
    }
    return false;
  }

  void walk(std::size_t start, std::size_t at, double ratio, std::vector<std::size_t>& trail,
            std::vector<bool>& visited) {
    for (const Edge& e : adjacency_[at]) {
      if (uses(trail, e.pref)) continue;
      const bool closes = e.to == start;
      if (visited[e.to] && !closes) continue;
      if (trail.size() >= max_depth_) {
        result_.truncated = true;
        return;
      }
      if (full()) return;
      trail.push_back(e.pref);
      const double next = ratio * e.factor;
      result_.relations.push_back({start, e.to, next, trail});
      if (!closes) {
        visited[e.to] = true;
        walk(start, e.to, next, trail, visited);
        visited[e.to] = false;
      }
      trail.pop_back();
    }
  }

  // x[s] = sum a_j x[j] with every x[j] replaced by k_j x[t] through
  // pairwise chains that share no preference.
  void substitute_linear() {
    const std::size_t pairwise_count = result_.relations.size();
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> chains;
    for (std::size_t r = 0; r < pairwise_count; ++r) {
      const auto& rel = result_.relations[r];
      if (rel.i != rel.j) chains[{rel.i, rel.j}].push_back(r);
    }
    for (std::size_t p = 0; p < problem_.preferences().size(); ++p) {
      const auto* lin = std::get_if<LinearPreference>(&problem_.preferences()[p]);
      if (!lin || lin->terms.size() < 2) continue;
      std::vector<std::pair<std::size_t, double>> terms;
      for (const auto& [j, a] : lin->terms) terms.emplace_back(j, to_double(a));
      for (std::size_t target = 0; target < problem_.size(); ++target) {
        std::vector<std::size_t> trail{p};
        combine(lin->subject, target, terms, 0, 0.0, trail, chains);
        if (result_.truncated && result_.relations.size() >= kRelationBudget) return;
      }
    }
  }

  void combine(std::size_t subject, std::size_t target, const std::vector<std::pair<std::size_t, double>>& terms,
               std::size_t term, double acc, std::vector<std::size_t>& trail,
               const std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>>& chains) {
    if (term == terms.size()) {
      if (full()) return;
      auto sorted = trail;
      std::sort(sorted.begin(), sorted.end());
      result_.relations.push_back({subject, target, acc, std::move(sorted)});
      return;
    }
    const auto [j, a] = terms[term];
    if (j == target) {
      combine(subject, target, terms, term + 1, acc + a, trail, chains);
      return;
    }
    auto it = chains.find({j, target});
    if (it == chains.end()) return;
    for (std::size_t r : it->second) {
      // Copy: the recursive call may append to relations and invalidate references.
      const DerivedRelation chain = result_.relations[r];
      bool disjoint = std::none_of(chain.trail.begin(), chain.trail.end(),
                                   [&](std::size_t q) { return uses(trail, q); });
      if (!disjoint) continue;
      const std::size_t mark = trail.size();
      trail.insert(trail.end(), chain.trail.begin(), chain.trail.end());
      combine(subject, target, terms, term + 1, acc + a * chain.ratio, trail, chains);
      trail.resize(mark);
      if (result_.relations.size() >= kRelationBudget) return;
    }
  }

  const Problem& problem_;
  std::size_t max_depth_;
  std::vector<std::vector<Edge>> adjacency_;
  DerivationResult result_;
};

int side_of_one(double k) {
  if (std::abs(k - 1.0) <= kRatioTol) return 0;
  return k > 1.0 ? 1 : -1;
}

bool differ(double a, double b) { return std::abs(a - b) > kRatioTol * std::max(std::abs(a), std::abs(b)); }

// Orient every two-variable relation as x[min] = k x[max].
DerivedRelation oriented(const DerivedRelation& r) {
  if (r.i <= r.j) return r;
  DerivedRelation out = r;
  std::swap(out.i, out.j);
  out.ratio = 1.0 / r.ratio;
  return out;
}

void require_linear_equations(const Problem& problem) {
  if (problem.has_inequalities()) {
    throw Error(ErrorKind::NonEquationPreference, "classification covers equation preferences only");
  }
  if (problem.has_nonlinear()) {
    throw Error(ErrorKind::NonlinearPreferencePresent, "classification covers linear preferences only");
  }
}

}  // namespace

std::string to_string(Label label) {
  switch (label) {
    case Label::Consistent: return "Consistent";
    case Label::WeakInconsistent: return "WeakInconsistent";
    case Label::StrongInconsistent: return "StrongInconsistent";
  }
  return "Unknown";
}

std::string to_string(Rule rule) {
  switch (rule) {
    case Rule::WD1: return "WD1";
    case Rule::WD2: return "WD2";
    case Rule::WD3: return "WD3";
    case Rule::SD4: return "SD4";
  }
  return "Unknown";
}

DerivationResult derive_relations(const Problem& problem, std::size_t max_depth) {
  if (max_depth == 0) max_depth = 1;
  return Deriver(problem, max_depth).run();
}

ClassificationReport classify(const Problem& problem, std::optional<std::size_t> max_depth) {
  require_linear_equations(problem);
  const DerivationResult derived = derive_relations(problem, max_depth.value_or(problem.size()));

  ClassificationReport report;
  report.depth_exceeded = derived.truncated;
  std::set<Rule> fired;

  // Group two-variable relations per unordered pair; one derivation per trail.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<DerivedRelation>> groups;
  std::set<std::pair<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>>> seen;
  for (const auto& rel : derived.relations) {
    if (rel.i == rel.j) {
      auto key = std::make_pair(std::make_pair(rel.i, rel.i), [&] {
        auto t = rel.trail;
        std::sort(t.begin(), t.end());
        return t;
      }());
      if (side_of_one(rel.ratio) != 0 && seen.insert(key).second) {
        fired.insert(Rule::WD3);
        if (report.witnesses.size() < 32) report.witnesses.push_back({Rule::WD3, rel, std::nullopt});
      }
      continue;
    }
    DerivedRelation o = oriented(rel);
    auto trail = o.trail;
    std::sort(trail.begin(), trail.end());
    if (!seen.insert({{o.i, o.j}, trail}).second) continue;
    groups[{o.i, o.j}].push_back(std::move(o));
  }

  for (const auto& [pair, rels] : groups) {
    const DerivedRelation* lo = nullptr;       // smallest ratio
    const DerivedRelation* hi = nullptr;       // largest ratio
    const DerivedRelation* lo_above = nullptr; // smallest ratio > 1
    const DerivedRelation* hi_below = nullptr; // largest ratio < 1
    for (const auto& r : rels) {
      if (!lo || r.ratio < lo->ratio) lo = &r;
      if (!hi || r.ratio > hi->ratio) hi = &r;
      if (side_of_one(r.ratio) > 0 && (!lo_above || r.ratio < lo_above->ratio)) lo_above = &r;
      if (side_of_one(r.ratio) < 0 && (!hi_below || r.ratio > hi_below->ratio)) hi_below = &r;
    }
    if (rels.size() < 2 || !differ(lo->ratio, hi->ratio)) continue;
    auto add = [&](Rule rule, const DerivedRelation& a, const DerivedRelation& b) {
      fired.insert(rule);
      if (report.witnesses.size() < 32) report.witnesses.push_back({rule, a, b});
    };
    if (side_of_one(lo->ratio) < 0 && side_of_one(hi->ratio) > 0) {
      add(Rule::SD4, *lo, *hi);
    }
    if (lo_above && differ(lo_above->ratio, hi->ratio)) {
      add(Rule::WD1, *lo_above, *hi);
    }
    if (hi_below && differ(lo->ratio, hi_below->ratio)) {
      add(Rule::WD2, *lo, *hi_below);
    }
    // A ratio equal to 1 against a differing one is a weak disagreement on the
    // side of the other ratio.
    if (side_of_one(lo->ratio) == 0 && side_of_one(hi->ratio) > 0) add(Rule::WD1, *lo, *hi);
    if (side_of_one(hi->ratio) == 0 && side_of_one(lo->ratio) < 0) add(Rule::WD2, *lo, *hi);
  }

  report.rules_fired.assign(fired.begin(), fired.end());
  if (fired.count(Rule::SD4)) {
    report.label = Label::StrongInconsistent;
  } else if (!fired.empty() || report.depth_exceeded) {
    report.label = Label::WeakInconsistent;
  } else {
    report.label = Label::Consistent;
  }

  const Matrix<Rational> a = assemble(problem);
  if (a.rows() == a.cols()) {
    // A singular matrix whose null space misses the positive orthant still
    // contradicts itself (for example two decoupled blocks, one of them regular).
    const bool solvable = determinant(a) == 0 && positive_null_vector(a).has_value();
    report.determinant_agrees = solvable == (report.label == Label::Consistent);
  }
  return report;
}

}  // namespace alphad
