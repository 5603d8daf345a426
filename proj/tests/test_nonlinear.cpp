#include "alphad/error.hpp"
#include "alphad/nonlinear.hpp"
#include "alphad/parser.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

using namespace alphad;
using alphad::test::Gen;

namespace {

ErrorKind triangular_error(const std::string& text) {
  try {
    (void)solve_triangular(parse_problem(text));
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

/// Component values by recursive evaluation of the preferences themselves.
std::vector<double> oracle_values(const Problem& p, std::size_t free_var, double z) {
  std::vector<std::optional<double>> memo(p.size());
  memo[free_var] = z;
  std::function<double(std::size_t)> value = [&](std::size_t i) -> double {
    if (memo[i]) return *memo[i];
    for (const auto& pref : p.preferences()) {
      if (const auto* m = std::get_if<MonomialPreference>(&pref); m && m->subject == i) {
        double v = to_double(m->coefficient);
        for (const auto& [j, e] : m->exponents) v *= std::pow(value(j), e);
        memo[i] = v;
        return v;
      }
      if (const auto* l = std::get_if<LinearPreference>(&pref); l && l->subject == i) {
        double v = 0;
        for (const auto& [j, a] : l->terms) v += to_double(a) * value(j);
        memo[i] = v;
        return v;
      }
    }
    FAIL("criterion has no defining equation");
    return 0;
  };
  std::vector<double> out;
  for (std::size_t i = 0; i < p.size(); ++i) out.push_back(value(i));
  return out;
}

/// Decreasing groups of numerically equal values.
std::vector<std::vector<std::size_t>> oracle_ordering(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t i : idx) {
    if (!groups.empty() && std::abs(v[groups.back().front()] - v[i]) <= 1e-9 * std::max(v[i], 1e-300)) {
      groups.back().push_back(i);
    } else {
      groups.push_back({i});
    }
  }
  for (auto& g : groups) std::sort(g.begin(), g.end());
  return groups;
}

double sample_point(const Regime& r) {
  if (r.point) return r.lo.value;
  if (!r.hi) return r.lo.value > 0 ? 2 * r.lo.value : 1.0;
  if (r.lo.value <= 0) return r.hi->value / 2;
  return std::sqrt(r.lo.value * r.hi->value);
}

}  // namespace

TEST_CASE("back-substitution of the mixed example") {
  auto p = test::load("ex15");
  auto s = solve_triangular(p);
  CHECK(s.free_var == 2);
  REQUIRE(s.components.size() == 3);
  CHECK(s.components[0] == MonomialTerm{Rational(10), 2});
  CHECK(s.components[1] == MonomialTerm{Rational(5), 1});
  CHECK(s.components[2] == MonomialTerm{Rational(1), 1});
}

TEST_CASE("regime table of the mixed example") {
  auto p = test::load("ex15");
  auto s = solve_triangular(p);
  auto r = regime_analysis(s, inequalities_of(p));
  CHECK(r.domain_lo.value == 0);
  CHECK_FALSE(r.domain_hi.has_value());
  REQUIRE(r.breakpoints.size() == 2);
  CHECK(*r.breakpoints[0].exact == Rational(1) / 10);
  CHECK(*r.breakpoints[1].exact == Rational(1) / 2);
  REQUIRE(r.regimes.size() == 5);
  std::vector<std::string> intervals;
  std::vector<std::string> orders;
  for (const auto& g : r.regimes) {
    intervals.push_back(interval_string(g, "z"));
    orders.push_back(ordering_string(g, p.criteria()));
  }
  CHECK(intervals == std::vector<std::string>{"(0, 0.1)", "z = 0.1", "(0.1, 0.5)", "z = 0.5", "(0.5, inf)"});
  CHECK(orders == std::vector<std::string>{"y>z>x", "y>z=x", "y>x>z", "y=x>z", "x>y>z"});
}

TEST_CASE("inequalities restrict the domain") {
  auto p = test::load("ex16");
  auto s = solve_triangular(p);
  auto r = regime_analysis(s, inequalities_of(p));
  CHECK(r.domain_lo.value == 0);
  REQUIRE(r.domain_hi);
  CHECK(*r.domain_hi->exact == Rational(1) / 10);
  CHECK(r.breakpoints.empty());
  REQUIRE(r.regimes.size() == 1);
  CHECK(ordering_string(r.regimes[0], p.criteria()) == "y>z>x");
  CHECK(interval_string(r.regimes[0], "z") == "(0, 0.1)");
}

TEST_CASE("contradictory inequalities leave an empty domain") {
  auto p = parse_problem("criteria: x y z\npref: x = 2 y * z\npref: y = 5 z\npref: x < z\npref: x > y\n");
  auto s = solve_triangular(p);
  CHECK_THROWS_AS(regime_analysis(s, inequalities_of(p)), Error);
  auto q = parse_problem("criteria: x y z\npref: x = 2 y * z\npref: y = 5 z\npref: y < z\n");
  try {
    (void)regime_analysis(solve_triangular(q), inequalities_of(q));
    FAIL("expected EmptyDomain");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyDomain);
  }
}

TEST_CASE("structural error paths") {
  CHECK(triangular_error("criteria: x y z\npref: x = y + z\npref: y = 2 z\n") == ErrorKind::NotTriangular);
  CHECK(triangular_error("criteria: x y z\npref: x = 2 y * z\npref: x = 3 z\n") == ErrorKind::NotTriangular);
  CHECK(triangular_error("criteria: x y z\npref: x = 2 y * z\npref: y = 5 z\npref: z = 2 x\n") ==
        ErrorKind::OverDetermined);
  CHECK(triangular_error("criteria: x y z w\npref: x = 2 y * z\n") == ErrorKind::MultipleFreeVars);
  CHECK(triangular_error("criteria: x y z w\npref: x = 2 y * z\npref: y = 3 x\npref: w = z\n") ==
        ErrorKind::NotTriangular);
  CHECK(triangular_error("criteria: a b c d e f g h\npref: a = b * b\npref: b = c * c\npref: c = d * d\n"
                         "pref: d = e * e\npref: e = f * f\npref: f = g * g\npref: g = h * h\n") ==
        ErrorKind::DegreeTooHigh);
  CHECK_THROWS_AS(normalized_at(solve_triangular(test::load("ex15")), 0.0), Error);
}

TEST_CASE("normalized components") {
  auto s = solve_triangular(test::load("ex15"));
  auto v = normalized_at(s, 0.3);
  // [0.9, 1.5, 0.3] / 2.7
  CHECK(v[0] == doctest::Approx(0.9 / 2.7));
  CHECK(v[1] == doctest::Approx(1.5 / 2.7));
  CHECK(v[2] == doctest::Approx(0.3 / 2.7));
}

TEST_CASE("regimes agree with direct evaluation on random triangular systems") {
  Gen gen(15);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = static_cast<std::size_t>(gen.integer(2, 5));
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    std::vector<Preference> prefs;
    // Criterion i depends on criteria with larger indices; the last one is free.
    for (std::size_t i = 0; i + 1 < n; ++i) {
      MonomialPreference m{i, gen.positive_rational(9), {}};
      for (std::size_t j = i + 1; j < n; ++j) {
        if (gen.integer(0, 1) || j == i + 1) m.exponents[j] = static_cast<unsigned>(gen.integer(1, 2));
      }
      prefs.push_back(m);
    }
    if (gen.integer(0, 2) == 0) {
      std::size_t a = static_cast<std::size_t>(gen.integer(0, static_cast<int>(n) - 1));
      std::size_t b = (a + 1) % n;
      prefs.push_back(InequalityPreference{a, b, gen.integer(0, 1) ? Relation::StrictLess : Relation::StrictGreater});
    }
    Problem p(CriteriaSet(names), prefs);
    auto s = solve_triangular(p);
    CHECK(s.free_var == n - 1);
    for (double z : {0.3, 1.0, 2.5}) {
      auto o = oracle_values(p, s.free_var, z);
      for (std::size_t i = 0; i < n; ++i) {
        double got = to_double(s.components[i].coefficient) * std::pow(z, s.components[i].exponent);
        CHECK(got == doctest::Approx(o[i]).epsilon(1e-12));
      }
    }
    RegimeReport r;
    try {
      r = regime_analysis(s, inequalities_of(p));
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::EmptyDomain);
      continue;
    }
    // Breakpoints are sorted and regimes alternate interval, point, interval.
    for (std::size_t k = 1; k < r.breakpoints.size(); ++k) CHECK(r.breakpoints[k - 1].value < r.breakpoints[k].value);
    CHECK(r.regimes.size() == 2 * r.breakpoints.size() + 1);
    for (const auto& g : r.regimes) {
      double z = sample_point(g);
      CAPTURE(format_problem(p));
      CAPTURE(z);
      if (!g.point && z > 1e150) continue;
      // Tied criteria keep the preceding interval's order; compare them as sets.
      auto got = g.ordering;
      for (auto& group : got) std::sort(group.begin(), group.end());
      CHECK(got == oracle_ordering(oracle_values(p, s.free_var, z)));
    }
    ++checked;
  }
  CHECK(checked > 100);
}
