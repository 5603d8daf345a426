#include "alphad/error.hpp"
#include "alphad/polynomial.hpp"
#include "alphad/rational.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace alphad;
using alphad::test::Gen;

namespace {

/// Independent root oracle: sign changes on a fine logarithmic grid, refined
/// by plain bisection.
std::vector<double> grid_roots(const Poly& p, double lo, double hi, int samples) {
  std::vector<double> roots;
  double llo = std::log(lo);
  double lhi = std::log(hi);
  auto at = [&](int k) { return std::exp(llo + (lhi - llo) * k / samples); };
  for (int k = 0; k < samples; ++k) {
    double a = at(k);
    double b = at(k + 1);
    double fa = eval(p, a);
    double fb = eval(p, b);
    if (fa == 0.0) {
      roots.push_back(a);
      continue;
    }
    if ((fa < 0) != (fb < 0) && fb != 0.0) {
      for (int it = 0; it < 200; ++it) {
        double m = 0.5 * (a + b);
        double fm = eval(p, m);
        if ((fm < 0) == (fa < 0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
  }
  return roots;
}

RationalPoly random_rpoly(Gen& gen, int max_degree) {
  int degree = gen.integer(0, max_degree);
  std::vector<Rational> c;
  for (int i = 0; i <= degree; ++i) {
    c.push_back(Rational(gen.integer(-9, 9)) / Rational(gen.integer(1, 5)));
  }
  return RationalPoly(c);
}

}  // namespace

TEST_CASE("parse_rational accepts integers, decimals and fractions") {
  CHECK(parse_rational("12") == Rational(12));
  CHECK(parse_rational("1.5") == Rational(3) / 2);
  CHECK(parse_rational(".5") == Rational(1) / 2);
  CHECK(parse_rational("1/12") == Rational(1) / 12);
  CHECK(parse_rational("2.5/3") == Rational(5) / 6);
  CHECK(parse_rational("0.01") == Rational(1) / 100);
}

TEST_CASE("parse_rational rejects malformed input") {
  for (const char* bad : {"", "abc", "1/0", "1//2", "1.2.3", "/3", "3/", "1e5", " 1", "--1"}) {
    CAPTURE(bad);
    CHECK_FALSE(parse_rational(bad).has_value());
  }
}

TEST_CASE("rational_from_double is exact for dyadic values") {
  CHECK(rational_from_double(0.5) == Rational(1) / 2);
  CHECK(rational_from_double(-3.0) == Rational(-3));
  Rational tenth = rational_from_double(0.1);
  CHECK(tenth != Rational(1) / 10);
  CHECK(to_double(tenth) == 0.1);
}

TEST_CASE("to_string prints integers without a denominator") {
  CHECK(to_string(Rational(7)) == "7");
  CHECK(to_string(Rational(-3) / 4) == "-3/4");
  CHECK(Number(Rational(1) / 3).to_string() == "1/3");
  CHECK(Number(0.25).to_string() == "0.25");
}

TEST_CASE("convergents approach the value") {
  auto cs = convergents(std::sqrt(2.0), 1000);
  REQUIRE(cs.size() >= 5);
  CHECK(cs[0] == Rational(1));
  CHECK(cs[1] == Rational(3) / 2);
  CHECK(cs[2] == Rational(7) / 5);
  for (std::size_t i = 1; i < cs.size(); ++i) {
    CHECK(std::abs(to_double(cs[i]) - std::sqrt(2.0)) <= std::abs(to_double(cs[i - 1]) - std::sqrt(2.0)));
  }
  auto third = convergents(1.0 / 3.0, 1000);
  CHECK(third.back() == Rational(1) / 3);
}

TEST_CASE("format_double is stable and locale independent") {
  CHECK(format_double(0.1 + 0.2) == "0.3");
  CHECK(format_double(1.0 / 3.0) == "0.333333333333");
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(format_double(-INFINITY) == "-inf");
  CHECK(format_double(123456789012345.0, 6) == "1.23457e+14");
  CHECK(round_significant(0.123456789, 3) == doctest::Approx(0.123).epsilon(1e-15));
}

TEST_CASE("polynomial ring axioms on random rational polynomials") {
  Gen gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_rpoly(gen, 5);
    auto b = random_rpoly(gen, 5);
    auto c = random_rpoly(gen, 5);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
    CHECK(a + (-a) == RationalPoly());
    CHECK(poly_arith(a, b, PolyOp::Mul) == a * b);
    CHECK(poly_arith(a, b, PolyOp::Sub) == a - b);
    Rational x = gen.positive_rational(7);
    CHECK((a * b)(x) == a(x) * b(x));
    if (!b.is_zero()) {
      auto [q, r] = a.divmod(b);
      CHECK(q * b + r == a);
      CHECK(r.degree() < b.degree());
    }
  }
}

TEST_CASE("polynomial construction trims and reports degree") {
  RationalPoly p({Rational(1), Rational(0), Rational(0)});
  CHECK(p.degree() == 0);
  CHECK(RationalPoly().degree() == -1);
  CHECK(RationalPoly::monomial(Rational(3), 4).degree() == 4);
  CHECK(RationalPoly::monomial(Rational(0), 4).is_zero());
  CHECK(RationalPoly({Rational(1), Rational(2), Rational(3)}).derivative() ==
        RationalPoly({Rational(2), Rational(6)}));
  CHECK(p.coefficient(7) == Rational(0));
  CHECK_THROWS_AS((void)p.divmod(RationalPoly()), Error);
}

TEST_CASE("trim_relative drops negligible leading terms") {
  Poly p({1.0, -2.0, 1e-20});
  CHECK(trim_relative(p, 1e-12).degree() == 1);
  CHECK(trim_relative(p, 0.0).degree() == 2);
}

TEST_CASE("positive_roots of known polynomials") {
  // 1 - 2 a^2
  auto r = positive_roots(Poly({1.0, 0.0, -2.0}));
  REQUIRE(r.size() == 1);
  CHECK(r[0].value == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));

  // (a - 1)^2 (a - 3): touching root at 1
  auto t = positive_roots(Poly({-3.0, 7.0, -5.0, 1.0}));
  REQUIRE(t.size() == 2);
  CHECK(t[0].value == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(t[0].multiplicity == 2);
  CHECK(t[1].value == doctest::Approx(3.0).epsilon(1e-12));

  // a (a + 1): no positive roots, zero root excluded
  CHECK(positive_roots(Poly({0.0, 1.0, 1.0})).empty());
  // constant
  CHECK(positive_roots(Poly({5.0})).empty());
}

TEST_CASE("positive_roots error paths") {
  CHECK_THROWS_AS(positive_roots(Poly()), Error);
  try {
    positive_roots(Poly());
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroPolynomial);
  }
  std::vector<double> big(kMaxPolyDegree + 2, 0.0);
  big.back() = 1.0;
  big.front() = -1.0;
  try {
    positive_roots(Poly(big));
    FAIL("expected DegreeTooHigh");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegreeTooHigh);
  }
}

TEST_CASE("positive_roots agree with a grid-scan oracle on random products of linear factors") {
  Gen gen(2024);
  for (int trial = 0; trial < 300; ++trial) {
    int count = gen.integer(1, 5);
    std::vector<double> expected;
    Poly p({gen.uniform(0.5, 2.0)});
    for (int k = 0; k < count; ++k) {
      double root = gen.uniform(-3.0, 20.0);
      p = p * Poly({-root, 1.0});
      if (root > 1e-3) expected.push_back(root);
    }
    std::sort(expected.begin(), expected.end());
    // keep distinct, well-separated cases so the grid oracle resolves them
    bool separated = true;
    for (std::size_t k = 1; k < expected.size(); ++k) {
      if (expected[k] - expected[k - 1] < 0.05) separated = false;
    }
    if (!separated) continue;
    auto got = positive_roots(p);
    auto oracle = grid_roots(p, 1e-4, 40.0, 20000);
    CAPTURE(trial);
    REQUIRE(got.size() == oracle.size());
    REQUIRE(got.size() == expected.size());
    for (std::size_t k = 0; k < got.size(); ++k) {
      CHECK(got[k].value == doctest::Approx(oracle[k]).epsilon(1e-9));
      CHECK(got[k].value == doctest::Approx(expected[k]).epsilon(1e-8));
    }
  }
}

TEST_CASE("exact_root_near recovers rational roots only") {
  RationalPoly p({Rational(1), Rational(0), Rational(-9)});  // 1 - 9 a^2
  CHECK(exact_root_near(p, 1.0 / 3.0) == Rational(1) / 3);
  RationalPoly q({Rational(1), Rational(0), Rational(-2)});
  CHECK_FALSE(exact_root_near(q, std::sqrt(0.5)).has_value());
  RationalPoly m({Rational(0), Rational(1) / 9, Rational(-81)});
  CHECK(exact_root_near(m, 1.0 / 729.0) == Rational(1) / 729);
}
