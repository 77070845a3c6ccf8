#include <doctest.h>

#include <cmath>

#include "gppa/diagnostics.hpp"
#include "gppa/gallery.hpp"
#include "test_helpers.hpp"

using namespace gppa;

namespace {

Problem quadratic_problem(Index n) {
  Problem p;
  p.dim = n;
  p.name = "quadratic";
  p.g1 = zero_prox_oracle();
  p.g2 = quadratic_smooth_oracle(1.0);
  p.h = zero_convex_oracle();
  return p;
}

Trace contraction_trace(double lambda, double eps = 1e-12) {
  // realized by the plain quadratic with t = 1/(1 - lambda)
  const Problem p = quadratic_problem(2);
  SolverConfig cfg;
  cfg.t = 1.0 / (1.0 - lambda);
  cfg.epsilon = eps;
  Vector x0(2);
  x0 << 1.0, -0.5;
  return run_gppa(p, x0, cfg);
}

Trace synthetic_trace(const std::vector<double>& steps, SolveStatus status) {
  Trace t;
  t.status = status;
  double f = 1.0;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    IterationRecord rec;
    rec.k = static_cast<std::int64_t>(k);
    rec.f_value = f;
    rec.step_norm = steps[k];
    rec.criticality_residual = steps[k];
    t.records.push_back(rec);
    f *= 0.9;
  }
  t.final_x = Vector::Zero(1);
  return t;
}

}  // namespace

TEST_CASE("verify_descent_report: clean gallery trace has zero violations") {
  SplitMix64 rng(51);
  const TrustRegionInstance inst = testing::random_trs_instance(4, rng);
  const Problem p = build_trust_region(inst);
  SolverConfig cfg;
  cfg.t = 1.5 * inst.rho;
  const Trace trace = run_gppa(p, testing::random_point_in_ball(4, 1.0, rng), cfg);
  REQUIRE(trace.status == SolveStatus::converged);

  const DescentReport rep =
      verify_descent_report(trace.records, cfg.t, p.g2.lipschitz_L, false);
  CHECK(rep.violations == 0);
  CHECK(rep.gaps.size() == trace.records.size() - 1);
  CHECK(rep.min_gap >= -rep.tolerance);
}

TEST_CASE("verify_descent_report: corrupted f column is caught") {
  Trace t = synthetic_trace({0.5, 0.4, 0.3, 0.2}, SolveStatus::converged);
  t.records[2].f_value = t.records[1].f_value + 1.0;  // force an increase
  const DescentReport rep = verify_descent_report(t.records, 2.0, 1.0, false);
  CHECK(rep.violations >= 1);
  CHECK(rep.min_gap < 0.0);
}

TEST_CASE("verify_descent_report: factor strengthens in convex-g1 mode") {
  const DescentReport weak = verify_descent_report({}, 2.0, 1.0, false);
  const DescentReport strong = verify_descent_report({}, 2.0, 1.0, true);
  CHECK(weak.factor == doctest::Approx(0.5));
  CHECK(strong.factor == doctest::Approx(1.5));
  CHECK(weak.gaps.empty());
  CHECK(weak.violations == 0);
}

TEST_CASE("verify_descent_report: single-record trace yields an empty gap list") {
  const Trace t = synthetic_trace({0.0}, SolveStatus::converged);
  const DescentReport rep = verify_descent_report(t.records, 2.0, 1.0, false);
  CHECK(rep.gaps.empty());
  CHECK(rep.violations == 0);
}

TEST_CASE("classify_rate: recovers the contraction factor of the quadratic family") {
  for (double lambda : {0.3, 0.5, 0.9}) {
    const Trace trace = contraction_trace(lambda);
    REQUIRE(trace.status == SolveStatus::converged);
    REQUIRE(trace.records.size() >= 20);
    const RateReport rep = classify_rate(trace);
    CHECK(rep.regime == RateRegime::linear);
    REQUIRE(rep.q.has_value());
    CHECK(std::abs(*rep.q - lambda) <= 0.05);
    CHECK(rep.fit_r2 >= 0.999);
    CHECK(*rep.theta_hat > 0.0);
    CHECK(*rep.theta_hat <= 0.5);
  }
}

TEST_CASE("classify_rate: exact fixed point in a few steps is finite termination") {
  // l1-shrinkage with no smooth part: 2.5 -> 1.5 -> 0.5 -> 0 -> 0 exactly
  Problem p;
  p.dim = 1;
  p.name = "l1";
  p.g1.evaluate = [](const Vector& x) { return ExtReal(std::abs(x[0])); };
  p.g1.prox = [](const Vector& z, double t) { return soft_threshold(z, 1.0, t); };
  p.g1.is_convex = true;
  p.g2 = zero_smooth_oracle();
  p.h = zero_convex_oracle();
  SolverConfig cfg;
  cfg.t = 1.0;
  cfg.epsilon = 1e-14;
  Vector x0(1);
  x0 << 2.5;
  const Trace trace = run_gppa(p, x0, cfg);
  REQUIRE(trace.status == SolveStatus::converged);
  CHECK(trace.records.back().step_norm == 0.0);
  const RateReport rep = classify_rate(trace);
  CHECK(rep.regime == RateRegime::finite);
  CHECK(*rep.theta_hat == 0.0);
}

TEST_CASE("classify_rate: short or unconverged traces are inconclusive") {
  const Trace trace = contraction_trace(0.5, 0.05);  // converges in a handful of steps
  REQUIRE(trace.status == SolveStatus::converged);
  REQUIRE(trace.records.size() < 20);
  CHECK(classify_rate(trace).regime == RateRegime::inconclusive);

  Trace unconverged = synthetic_trace(std::vector<double>(30, 0.5), SolveStatus::max_iters);
  const RateReport rep = classify_rate(unconverged);
  CHECK(rep.regime == RateRegime::inconclusive);
  CHECK(rep.note.find("max_iters") != std::string::npos);
}

namespace {

// Steps whose tail sums are exactly Delta_k = (k+1)^{-2}, the distance bound
// of a sublinear run with theta = 3/4.
std::vector<double> power_law_steps(int m, double power) {
  std::vector<double> steps;
  for (int k = 0; k + 1 < m; ++k) {
    steps.push_back(std::pow(k + 1.0, power) - std::pow(k + 2.0, power));
  }
  steps.push_back(std::pow(static_cast<double>(m), power));
  return steps;
}

}  // namespace

TEST_CASE("classify_rate: sublinear tail sums fit the log-log model") {
  const Trace trace = synthetic_trace(power_law_steps(400, -2.0), SolveStatus::converged);
  const RateReport rep = classify_rate(trace);
  CHECK(rep.regime == RateRegime::sublinear);
  REQUIRE(rep.exponent.has_value());
  CHECK(*rep.exponent < 0.0);
  CHECK(std::abs(*rep.exponent - (-2.0)) <= 0.2);
  CHECK(*rep.theta_hat > 0.5);
  CHECK(*rep.theta_hat < 1.0);
}

TEST_CASE("rate report: regime and theta stay structurally consistent") {
  const auto consistent = [](const RateReport& r) {
    switch (r.regime) {
      case RateRegime::finite:
        return r.theta_hat && *r.theta_hat == 0.0;
      case RateRegime::linear:
        return r.q && *r.q > 0.0 && *r.q < 1.0 && r.theta_hat && *r.theta_hat > 0.0 &&
               *r.theta_hat <= 0.5;
      case RateRegime::sublinear:
        return r.exponent && *r.exponent < 0.0 && r.theta_hat && *r.theta_hat > 0.5 &&
               *r.theta_hat < 1.0;
      case RateRegime::inconclusive:
        return true;
    }
    return false;
  };
  CHECK(consistent(classify_rate(contraction_trace(0.5))));
  CHECK(consistent(classify_rate(contraction_trace(0.9))));
  CHECK(consistent(classify_rate(
      synthetic_trace(power_law_steps(200, -1.5), SolveStatus::converged))));
}

TEST_CASE("boundedness_monitor: bounded trs run vs divergent construction") {
  SplitMix64 rng(52);
  const TrustRegionInstance inst = testing::random_trs_instance(3, rng);
  const Problem trs = build_trust_region(inst);
  SolverConfig cfg;
  cfg.t = 1.5 * inst.rho;
  cfg.record_full_points = true;
  const Trace bounded = run_gppa(trs, testing::random_point_in_ball(3, 1.0, rng), cfg);
  const BoundednessReport ok = boundedness_monitor(bounded);
  CHECK_FALSE(ok.flagged);
  CHECK(ok.max_norm <= inst.r + 1e-12);

  // f = -||x||: subgradient steps march outward forever
  Problem divergent;
  divergent.dim = 2;
  divergent.name = "divergent";
  divergent.g1 = zero_prox_oracle();
  divergent.g2 = zero_smooth_oracle();
  divergent.h.evaluate = [](const Vector& x) { return x.norm(); };
  divergent.h.subgradient = [](const Vector& x) {
    const double n = x.norm();
    return n == 0.0 ? Vector(Vector::Zero(x.size())) : Vector(x / n);
  };
  SolverConfig dcfg;
  dcfg.t = 1.0;
  dcfg.max_iters = 200;
  dcfg.record_full_points = true;
  Vector x0(2);
  x0 << 1.0, 0.0;
  const Trace diverging = run_gppa(divergent, x0, dcfg);
  CHECK(diverging.status == SolveStatus::max_iters);
  const BoundednessReport bad = boundedness_monitor(diverging, 10.0);
  CHECK(bad.flagged);
  CHECK(bad.max_norm > 10.0 * (x0.norm() + 1.0));
}

TEST_CASE("boundedness_monitor: single-point trace and missing points") {
  const Problem p = quadratic_problem(2);
  SolverConfig cfg;
  cfg.t = 2.0;
  cfg.record_full_points = true;
  Vector x0(2);
  x0 << 0.6, -0.8;
  const Trace one = run_gppa(p, Vector::Zero(2), cfg);
  // fixed-point start: one record, max norm is ||x0|| = 0
  CHECK(boundedness_monitor(one).max_norm == 0.0);

  cfg.record_full_points = false;
  const Trace bare = run_gppa(p, x0, cfg);
  CHECK_THROWS_AS(boundedness_monitor(bare), std::invalid_argument);
}
