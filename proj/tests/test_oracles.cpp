#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "gppa/eigenvalue.hpp"
#include "gppa/oracles.hpp"
#include "gppa/solver.hpp"
#include "test_helpers.hpp"

using namespace gppa;
using gppa::testing::central_difference_gradient;
using gppa::testing::random_point_in_ball;
using gppa::testing::random_symmetric;
using gppa::testing::random_trs_instance;

namespace {

Problem pure_quadratic_problem() {
  Problem p;
  p.dim = 2;
  p.name = "quadratic";
  p.g1 = zero_prox_oracle();
  p.g2 = quadratic_smooth_oracle(1.0);
  p.h = zero_convex_oracle();
  return p;
}

}  // namespace

TEST_CASE("evaluate_objective: plain quadratic") {
  const Problem p = pure_quadratic_problem();
  Vector x(2);
  x << 3.0, 4.0;
  const ExtReal f = evaluate_objective(p, x);
  REQUIRE(f.is_finite());
  CHECK(f.value() == doctest::Approx(12.5).epsilon(1e-14));
}

TEST_CASE("evaluate_objective: 1d counterexample matches 2|x| + 3x") {
  const Problem p = counterexample_1d();
  Vector x(1);
  x << 1.0;
  CHECK(evaluate_objective(p, x).value() == doctest::Approx(5.0).epsilon(1e-14));
  x << -2.0;
  // 2|x| + 3x = 4 - 6 = -2
  CHECK(evaluate_objective(p, x).value() == doctest::Approx(-2.0).epsilon(1e-14));
}

TEST_CASE("evaluate_objective: +inf outside the trust-region ball") {
  Matrix A(2, 2);
  A << 2.0, 0.0, 0.0, -1.0;
  Vector b(2);
  b << 1.0, 0.0;
  const Problem p = build_trust_region(A, b, 1.0);
  Vector x(2);
  x << 2.0, 0.0;
  CHECK_FALSE(evaluate_objective(p, x).is_finite());
  x << 0.5, 0.0;
  CHECK(evaluate_objective(p, x).is_finite());
}

TEST_CASE("evaluate_objective: dimension mismatch is a structured error") {
  const Problem p = pure_quadratic_problem();
  Vector x(3);
  x.setZero();
  CHECK_THROWS_AS(evaluate_objective(p, x), std::invalid_argument);
}

TEST_CASE("objective decomposition: f equals the sum of the three oracles") {
  SplitMix64 rng(11);
  const TrustRegionInstance inst = random_trs_instance(4, rng);
  const Problem p = build_trust_region(inst);
  for (int i = 0; i < 200; ++i) {
    const Vector x = random_point_in_ball(4, 1.0, rng);
    const double direct = p.g1.evaluate(x).value() + p.g2.evaluate(x) - p.h.evaluate(x);
    CHECK(evaluate_objective(p, x).value() == doctest::Approx(direct).epsilon(1e-15));
    // and the decomposition telescopes back to the quadratic
    CHECK(evaluate_objective(p, x).value() ==
          doctest::Approx(inst.quadratic(x)).epsilon(1e-10));
  }
}

TEST_CASE("gallery smooth oracles: gradient matches central differences") {
  SplitMix64 rng(12);
  const TrustRegionInstance inst = random_trs_instance(3, rng);
  const Problem trs = build_trust_region(inst);
  const Problem feas = build_feasibility(ball_set(2.0), halfspace_set(Vector::Ones(3), 0.5), 3);
  const Problem ce = counterexample_1d();

  const auto check_oracle = [&](const SmoothOracle& o, Index n) {
    for (int i = 0; i < 100; ++i) {
      const Vector x = rng.uniform_vector(n, -2.0, 2.0);
      const Vector fd = central_difference_gradient(o.evaluate, x);
      const Vector g = o.gradient(x);
      CHECK((fd - g).norm() <= 1e-6 * std::max(1.0, g.norm()));
    }
  };
  check_oracle(trs.g2, 3);
  check_oracle(feas.g2, 3);
  check_oracle(ce.g2, 1);
}

TEST_CASE("gallery smooth oracles: Lipschitz witness and descent lemma") {
  SplitMix64 rng(13);
  const TrustRegionInstance inst = random_trs_instance(4, rng);
  const Problem p = build_trust_region(inst);
  const double L = p.g2.lipschitz_L;
  for (int i = 0; i < 500; ++i) {
    const Vector x = rng.uniform_vector(4, -3.0, 3.0);
    const Vector y = rng.uniform_vector(4, -3.0, 3.0);
    const double lhs = (p.g2.gradient(x) - p.g2.gradient(y)).norm();
    CHECK(lhs <= L * (x - y).norm() * (1.0 + 1e-10) + 1e-12);
    const double upper = p.g2.evaluate(x) + p.g2.gradient(x).dot(y - x) +
                         0.5 * L * (y - x).squaredNorm();
    CHECK(p.g2.evaluate(y) <= upper + 1e-10 * (1.0 + std::abs(upper)));
  }
}

TEST_CASE("gallery convex oracles: subgradient inequality on sampled pairs") {
  SplitMix64 rng(14);
  const TrustRegionInstance inst = random_trs_instance(3, rng);
  const Problem trs = build_trust_region(inst);
  const Problem feas =
      build_feasibility(halfspace_set(Vector::Ones(2), 5.0), ball_set(1.0), 2);
  const Problem ce = counterexample_1d();

  const auto check_oracle = [&](const ConvexOracle& o, Index n) {
    for (int i = 0; i < 300; ++i) {
      const Vector x = rng.uniform_vector(n, -3.0, 3.0);
      const Vector w = rng.uniform_vector(n, -3.0, 3.0);
      const double lhs = o.evaluate(x) + o.subgradient(x).dot(w - x);
      CHECK(o.evaluate(w) >= lhs - 1e-10 * (1.0 + std::abs(lhs)));
    }
  };
  check_oracle(trs.h, 3);
  check_oracle(feas.h, 2);
  check_oracle(ce.h, 1);
}

TEST_CASE("gallery convex oracles: bounded subgradients along bounded sequences") {
  SplitMix64 rng(15);
  const Problem feas =
      build_feasibility(halfspace_set(Vector::Ones(2), 5.0), ball_set(1.0), 2);
  double max_norm = 0.0;
  for (int i = 0; i < 200; ++i) {
    const Vector x = rng.uniform_vector(2, -10.0, 10.0);
    max_norm = std::max(max_norm, feas.h.subgradient(x).norm());
  }
  CHECK(max_norm <= 1.0 + 1e-12);  // subgradients live in the unit ball B
}

TEST_CASE("gallery prox oracles: prox value never loses to keeping z") {
  SplitMix64 rng(16);
  const Problem ce = counterexample_1d();
  for (int i = 0; i < 300; ++i) {
    Vector z(1);
    z << rng.uniform(-5.0, 5.0);
    const double t = rng.uniform(0.5, 6.0);
    const Vector u = ce.g1.prox(z, t);
    const double at_u = ce.g1.evaluate(u).value() + 0.5 * t * (u - z).squaredNorm();
    const double at_z = ce.g1.evaluate(z).value();
    CHECK(at_u <= at_z + 1e-12 * (1.0 + std::abs(at_z)));
  }
}

TEST_CASE("gallery g1 oracles: lower semicontinuity along constructed sequences") {
  Matrix A = Matrix::Identity(2, 2);
  const Problem p = build_trust_region(A, Vector::Zero(2), 1.0);
  // approach a boundary point from inside the ball: values stay 0 = value at the limit
  Vector limit(2);
  limit << 1.0, 0.0;
  for (int k = 1; k <= 12; ++k) {
    const Vector xk = (1.0 - std::pow(2.0, -k)) * limit;
    CHECK(p.g1.evaluate(xk).value() == 0.0);
  }
  CHECK(p.g1.evaluate(limit).value() == 0.0);
}

TEST_CASE("gallery g1 oracles: evaluate is bounded below on samples") {
  SplitMix64 rng(101);
  const Problem trs = build_trust_region(Matrix(Matrix::Identity(2, 2)), Vector::Zero(2), 1.0);
  const Problem ce = counterexample_1d();
  for (int i = 0; i < 200; ++i) {
    const Vector x2 = rng.uniform_vector(2, -5.0, 5.0);
    const ExtReal v = trs.g1.evaluate(x2);
    CHECK((!v.is_finite() || v.value() >= 0.0));
    const Vector x1 = rng.uniform_vector(1, -5.0, 5.0);
    CHECK(ce.g1.evaluate(x1).value() >= 0.0);
  }
}

TEST_CASE("estimate_symmetric_max_eigenvalue: 1x1 and pure-shift matrices") {
  Matrix one(1, 1);
  one << -7.5;
  CHECK(estimate_symmetric_max_eigenvalue(one, 1e-12) == -7.5);
  const Matrix shift = 3.25 * Matrix::Identity(4, 4);
  CHECK(estimate_symmetric_max_eigenvalue(shift, 1e-10) ==
        doctest::Approx(3.25).epsilon(1e-9));
}

TEST_CASE("estimate_symmetric_max_eigenvalue: diagonal and swap matrices") {
  Matrix A(2, 2);
  A << 2.0, 0.0, 0.0, -1.0;
  CHECK(estimate_symmetric_max_eigenvalue(A, 1e-10) == doctest::Approx(2.0).epsilon(1e-9));
  Matrix B(2, 2);
  B << 0.0, 1.0, 1.0, 0.0;
  CHECK(estimate_symmetric_max_eigenvalue(B, 1e-10) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("estimate_symmetric_max_eigenvalue: random 5x5 vs dense eigensolver") {
  SplitMix64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix A = random_symmetric(5, rng, -2.0, 2.0);
    // independent oracle: dense symmetric eigendecomposition
    Eigen::SelfAdjointEigenSolver<Matrix> es(A);
    const double expected = es.eigenvalues().maxCoeff();
    const double tol = 1e-9;
    const double got = estimate_symmetric_max_eigenvalue(A, tol);
    CHECK(std::abs(got - expected) <= tol * std::max(1.0, std::abs(expected)));
  }
}

TEST_CASE("estimate_symmetric_max_eigenvalue: deterministic across calls") {
  SplitMix64 rng(18);
  const Matrix A = random_symmetric(6, rng);
  const double a = estimate_symmetric_max_eigenvalue(A, 1e-10);
  const double b = estimate_symmetric_max_eigenvalue(A, 1e-10);
  CHECK(a == b);
}

TEST_CASE("estimate_symmetric_max_eigenvalue: error paths") {
  Matrix A(2, 2);
  A << 0.0, 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(estimate_symmetric_max_eigenvalue(A, 1e-8), std::invalid_argument);

  SplitMix64 rng(19);
  const Matrix B = random_symmetric(6, rng);
  try {
    estimate_symmetric_max_eigenvalue(B, 1e-14, 1);
    FAIL("expected EigensolveError");
  } catch (const EigensolveError& e) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(B);
    // the carried estimate is a usable Rayleigh quotient, so it cannot
    // exceed the true maximum
    CHECK(e.best_estimate() <= es.eigenvalues().maxCoeff() + 1e-9);
  }
}
