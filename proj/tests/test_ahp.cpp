#include "alphad/ahp.hpp"
#include "alphad/error.hpp"
#include "alphad/parser.hpp"
#include "support.hpp"

#include <Eigen/Dense>
#include <doctest.h>

#include <cmath>
#include <vector>

using namespace alphad;
using alphad::test::Gen;

namespace {

struct EigenOracle {
  double lambda;
  std::vector<double> vector;
};

/// Dominant eigenpair from a general dense eigensolver.
EigenOracle oracle(const Matrix<double>& m) {
  const auto n = static_cast<Eigen::Index>(m.rows());
  Eigen::MatrixXd e(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) e(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  Eigen::EigenSolver<Eigen::MatrixXd> es(e);
  Eigen::Index best = 0;
  for (Eigen::Index k = 1; k < n; ++k) {
    if (es.eigenvalues()[k].real() > es.eigenvalues()[best].real()) best = k;
  }
  Eigen::VectorXd v = es.eigenvectors().col(best).real();
  v /= v.sum();
  return {es.eigenvalues()[best].real(), {v.data(), v.data() + n}};
}

Matrix<double> random_reciprocal(Gen& gen, std::size_t n) {
  Matrix<double> m(n, n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double v = gen.integer(0, 1) ? static_cast<double>(gen.integer(1, 9)) : 1.0 / gen.integer(1, 9);
      m(i, j) = v;
      m(j, i) = 1.0 / v;
    }
  }
  return m;
}

ErrorKind build_error(const std::string& text) {
  try {
    (void)build_ahp_matrix(parse_problem(text));
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

}  // namespace

TEST_CASE("matrix validation") {
  CHECK_NOTHROW(AhpMatrix(Matrix<double>{{1, 2}, {0.5, 1}}));
  auto kind = [](Matrix<double> m) {
    try {
      AhpMatrix a(std::move(m));
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Internal;
  };
  CHECK(kind(Matrix<double>{{2, 2}, {0.5, 1}}) == ErrorKind::InvalidProblem);
  CHECK(kind(Matrix<double>{{1, 2}, {0.4, 1}}) == ErrorKind::InvalidProblem);
  CHECK(kind(Matrix<double>{{1, -2}, {-0.5, 1}}) == ErrorKind::InvalidProblem);
  CHECK(kind(Matrix<double>{{1, 2, 3}, {0.5, 1, 1}}) == ErrorKind::InvalidProblem);
}

TEST_CASE("building the comparison matrix from preferences") {
  auto m = build_ahp_matrix(test::load("ex1"));
  CHECK(m.matrix()(0, 1) == 4);
  CHECK(m.matrix()(1, 0) == 0.25);
  CHECK(m.matrix()(2, 0) == doctest::Approx(1.0 / 12));
  CHECK(build_error("criteria: x y z\npref: x = 2 y + 3 z\npref: y = 1/2 x\npref: z = 1/3 x\n") == ErrorKind::NotPairwise);
  CHECK(build_error("criteria: x y z\npref: x = 2 y\npref: y = 3 z\n") == ErrorKind::MissingPair);
  CHECK(build_error("criteria: x y\npref: x = 2 y\npref: y = 2 x\n") == ErrorKind::ConflictingPair);
  CHECK_NOTHROW(build_ahp_matrix(parse_problem("criteria: x y\npref: x = 2 y\npref: y = 1/2 x\n")));
}

TEST_CASE("consistent matrices use the eigenvector directly") {
  auto r = ahp_priority(build_ahp_matrix(test::load("ex1")));
  CHECK(r.method == AhpMethod::PowerIteration);
  CHECK(std::abs(r.lambda_max - 3) <= 1e-8);
  CHECK(std::abs(r.ci) <= 1e-8);
  std::vector<double> expected{0.75, 0.1875, 0.0625};
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(r.vector[i] - expected[i]) <= 1e-8);
}

TEST_CASE("inconsistent matrices go through repeated squaring") {
  auto m = build_ahp_matrix(test::load("ex9"));
  auto r = ahp_priority(m);
  CHECK(r.method == AhpMethod::Squaring);
  auto o = oracle(m.matrix());
  CHECK(r.lambda_max == doctest::Approx(o.lambda).epsilon(1e-9));
  for (std::size_t i = 0; i < 3; ++i) CHECK(r.vector[i] == doctest::Approx(o.vector[i]).epsilon(1e-8));
  CHECK(r.ci == doctest::Approx((o.lambda - 3) / 2).epsilon(1e-8));
}

TEST_CASE("power iteration and squaring agree with a dense eigensolver on random reciprocal matrices") {
  Gen gen(55);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = static_cast<std::size_t>(gen.integer(2, 9));
    AhpMatrix m(random_reciprocal(gen, n));
    auto o = oracle(m.matrix());
    auto p = principal_eigen(m);
    auto s = ahp_priority(m);
    CAPTURE(trial);
    CHECK(o.lambda >= static_cast<double>(n) - 1e-9);
    CHECK(p.lambda_max == doctest::Approx(o.lambda).epsilon(1e-8));
    CHECK(s.lambda_max == doctest::Approx(o.lambda).epsilon(1e-8));
    double sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(p.vector[i] == doctest::Approx(o.vector[i]).epsilon(1e-7));
      CHECK(s.vector[i] == doctest::Approx(o.vector[i]).epsilon(1e-7));
      CHECK(s.vector[i] > 0);
      sum += s.vector[i];
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("iteration cap raises NoConvergence") {
  Gen gen(2);
  AhpMatrix m(random_reciprocal(gen, 6));
  try {
    (void)principal_eigen(m, 1e-300, 1);
    FAIL("expected NoConvergence");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoConvergence);
  }
}
