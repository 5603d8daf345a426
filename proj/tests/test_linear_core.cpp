#include "alphad/error.hpp"
#include "alphad/linear_core.hpp"
#include "support.hpp"

#include <Eigen/Dense>
#include <doctest.h>

#include <cmath>
#include <vector>

using namespace alphad;
using alphad::test::Gen;

namespace {

/// Random m x n integer matrix of the requested rank: product of m x r and r x n factors.
Matrix<Rational> rank_deficient(Gen& gen, std::size_t m, std::size_t n, std::size_t r) {
  Matrix<Rational> left(m, r);
  Matrix<Rational> right(r, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < r; ++k) left(i, k) = Rational(gen.integer(-5, 5));
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t j = 0; j < n; ++j) right(k, j) = Rational(gen.integer(-5, 5));
  Matrix<Rational> out(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < r; ++k) out(i, j) += left(i, k) * right(k, j);
  return out;
}

Eigen::MatrixXd to_eigen(const Matrix<double>& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

}  // namespace

TEST_CASE("matrix construction and row operations") {
  Matrix<double> m{{1, 2}, {3, 4}, {5, 6}};
  CHECK(m.rows() == 3);
  CHECK(m.cols() == 2);
  m.swap_rows(0, 2);
  CHECK(m(0, 0) == 5);
  std::vector<std::size_t> pick{2, 0};
  auto s = m.select_rows(pick);
  CHECK(s(0, 1) == 2);
  CHECK(s(1, 1) == 6);
  CHECK(max_abs_entry(Matrix<double>{{-7, 2}}) == 7);
  CHECK_THROWS_AS((Matrix<double>{{1, 2}, {3}}), Error);
}

TEST_CASE("determinant small cases") {
  Matrix<Rational> m{{Rational(2), Rational(1)}, {Rational(1), Rational(3)}};
  CHECK(determinant(m) == Rational(5));
  Matrix<Rational> sing{{Rational(1), Rational(2)}, {Rational(2), Rational(4)}};
  CHECK(determinant(sing) == Rational(0));
  Matrix<double> z(3, 3, 0.0);
  CHECK(determinant(z) == 0.0);
  try {
    (void)determinant(Matrix<double>(2, 3));
    FAIL("expected NotSquare");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotSquare);
  }
}

TEST_CASE("determinant agrees with Eigen on random matrices") {
  Gen gen(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = static_cast<std::size_t>(gen.integer(1, 7));
    Matrix<double> m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = gen.uniform(-3, 3);
    double oracle = to_eigen(m).determinant();
    CHECK(determinant(m) == doctest::Approx(oracle).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("det_poly matches pointwise determinants") {
  Gen gen(17);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = static_cast<std::size_t>(gen.integer(1, 6));
    PolyMatrix pm(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<Rational> c;
        int deg = gen.integer(0, 2);
        for (int d = 0; d <= deg; ++d) c.push_back(Rational(gen.integer(-4, 4)));
        pm(i, j) = RationalPoly(c);
      }
    }
    auto dp = det_poly(pm);
    for (int k = 0; k < 4; ++k) {
      Rational x = Rational(gen.integer(-6, 6)) / Rational(gen.integer(1, 4));
      CAPTURE(trial);
      CHECK(dp(x) == determinant(evaluate(pm, x)));
    }
  }
}

TEST_CASE("rank and nullspace agree with a full-pivot oracle on 100 random rank-deficient matrices") {
  Gen gen(100);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = static_cast<std::size_t>(gen.integer(2, 8));
    std::size_t m = static_cast<std::size_t>(gen.integer(1, 9));
    std::size_t r = static_cast<std::size_t>(gen.integer(0, static_cast<int>(std::min(m, n) - 1)));
    if (r >= n) r = n - 1;
    auto a = rank_deficient(gen, m, n, r);
    auto ad = to_double(a);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(to_eigen(ad));
    lu.setThreshold(1e-9);
    CAPTURE(trial);
    std::size_t exact_rank = rank(a);
    CHECK(exact_rank == static_cast<std::size_t>(lu.rank()));
    CHECK(rank(ad) == exact_rank);

    auto gs = general_solution(a);
    CHECK(gs.secondary_vars.size() == n - exact_rank);
    CHECK(gs.main_vars.size() == exact_rank);
    auto basis = gs.basis();
    REQUIRE(basis.size() == n - exact_rank);
    for (const auto& v : basis) {
      for (const auto& entry : multiply(a, std::span<const Rational>(v))) CHECK(entry == 0);
    }
    // The basis spans the oracle kernel: stacking both keeps the kernel dimension.
    Eigen::MatrixXd kernel = lu.kernel();
    Eigen::MatrixXd ours(n, basis.size());
    for (std::size_t c = 0; c < basis.size(); ++c)
      for (std::size_t i = 0; i < n; ++i) ours(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = to_double(basis[c][i]);
    Eigen::MatrixXd both(n, kernel.cols() + ours.cols());
    both << kernel, ours;
    Eigen::FullPivLU<Eigen::MatrixXd> span_check(both);
    span_check.setThreshold(1e-9);
    CHECK(span_check.rank() == kernel.cols());

    auto gd = general_solution(ad);
    CHECK(gd.secondary_vars == gs.secondary_vars);
    for (const auto& v : gd.basis()) {
      auto res = multiply(ad, std::span<const double>(v));
      for (double e : res) CHECK(std::abs(e) < 1e-8);
    }
  }
}

TEST_CASE("general_solution on a full rank system throws FullRank") {
  Matrix<Rational> id{{Rational(1), Rational(0)}, {Rational(0), Rational(1)}};
  try {
    (void)general_solution(id);
    FAIL("expected FullRank");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::FullRank);
  }
}

TEST_CASE("particular_positive sets secondary variables to one") {
  // x1 - 4 x2 = 0, x2 - 3 x3 = 0
  Matrix<Rational> a{{Rational(1), Rational(-4), Rational(0)}, {Rational(0), Rational(1), Rational(-3)}};
  auto gs = general_solution(a);
  REQUIRE(gs.secondary_vars == std::vector<std::size_t>{2});
  auto p = particular_positive(gs);
  CHECK(p == std::vector<Rational>{Rational(12), Rational(3), Rational(1)});
  auto v = normalize<Rational>(p);
  CHECK(v == std::vector<Rational>{Rational(3) / 4, Rational(3) / 16, Rational(1) / 16});
}

TEST_CASE("particular_positive rejects sign-mixed solutions") {
  Matrix<Rational> a{{Rational(1), Rational(1)}};
  auto gs = general_solution(a);
  try {
    (void)particular_positive(gs);
    FAIL("expected NonPositiveComponent");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonPositiveComponent);
  }
  std::vector<double> bad{1.0, -1.0};
  CHECK_THROWS_AS(normalize<double>(bad), Error);
}

TEST_CASE("rank tolerance treats tiny pivots as zero in double") {
  Matrix<double> m{{1, 1}, {1, 1 + 1e-13}};
  CHECK(rank(m) == 1);
  CHECK(rank(m, 1e-15) == 2);
}

TEST_CASE("positive_null_vector finds strictly positive kernel vectors") {
  Matrix<Rational> a{{Rational(1), Rational(-4), Rational(0)}, {Rational(0), Rational(1), Rational(-3)}};
  auto x = positive_null_vector(a);
  REQUIRE(x);
  for (const auto& v : *x) CHECK(v > 0);
  for (const auto& e : multiply(a, std::span<const Rational>(*x))) CHECK(e == 0);

  // x1 + x2 = 0 has no positive solution.
  CHECK_FALSE(positive_null_vector(Matrix<Rational>{{Rational(1), Rational(1)}}).has_value());
  // Regular matrix: only the null vector.
  CHECK_FALSE(positive_null_vector(Matrix<Rational>{{Rational(1), Rational(0)}, {Rational(0), Rational(1)}}).has_value());
}

TEST_CASE("positive_null_vector agrees with a sign oracle on one-dimensional kernels") {
  Gen gen(41);
  int positive = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = static_cast<std::size_t>(gen.integer(2, 5));
    auto a = rank_deficient(gen, n - 1, n, n - 1);
    if (rank(a) != n - 1) continue;
    auto basis = general_solution(a).basis();
    REQUIRE(basis.size() == 1);
    const auto& v = basis[0];
    bool all_pos = std::all_of(v.begin(), v.end(), [](const Rational& e) { return e > 0; });
    bool all_neg = std::all_of(v.begin(), v.end(), [](const Rational& e) { return e < 0; });
    auto x = positive_null_vector(a);
    CAPTURE(trial);
    CHECK(x.has_value() == (all_pos || all_neg));
    if (x) {
      ++positive;
      for (const auto& e : multiply(a, std::span<const Rational>(*x))) CHECK(e == 0);
      for (const auto& e : *x) CHECK(e > 0);
    }
  }
  CHECK(positive > 0);
}
