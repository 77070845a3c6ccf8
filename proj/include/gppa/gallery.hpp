#pragma once

#include <optional>

#include "gppa/oracles.hpp"
#include "gppa/sets.hpp"

namespace gppa {

// min { 1/2 x'Ax + b'x : ||x|| <= r } decomposed as
//   g1 = indicator of the ball E, g2 = (rho/2)||x||^2 + b'x,
//   h = 1/2 x'(rho I - A)x,
// with rho chosen so rho I - A is positive semidefinite. Lipschitz constants:
// L = rho for grad g2 and L(h) = lambda_max(rho I - A) for grad h.
struct TrustRegionInstance {
  Matrix A;
  Vector b;
  double r = 1.0;
  double rho = 0.0;
  double lipschitz_h = 0.0;  // lambda_max(rho I - A)

  double lipschitz_L() const { return rho; }
  Index dim() const { return A.rows(); }
  // 1/2 x'Ax + b'x, the quadratic the decomposition telescopes back to.
  double quadratic(const Vector& x) const;
};

// Validates symmetry and the PSD shift. When rho is unset it defaults to
// lambda_max(A) + 1e-6 * (1 + |lambda_max(A)|).
TrustRegionInstance make_trust_region_instance(Matrix A, Vector b, double r,
                                               std::optional<double> rho = {},
                                               double eig_tol = 1e-9);

Problem build_trust_region(const TrustRegionInstance& instance);
Problem build_trust_region(Matrix A, Vector b, double r,
                           std::optional<double> rho = {});

// The ball-projected update P_E((1/(t+rho))((t+rho)x - Ax - b)). With this
// parametrization the map coincides with gppa_step at prox parameter t+rho
// (keeping the quadratic g2 exact inside the subproblem is the same as
// linearizing it with the shifted parameter).
Vector trs_closed_form_step(const TrustRegionInstance& instance, const Vector& x,
                            double t);

struct BruteForceResult {
  Vector x;
  double f = 0.0;
};

// Desk-scale oracle (n <= 3): dense grid over the ball followed by a
// monotone shrinking-step local search with out-of-ball candidates projected
// onto the sphere. Independent of the solver path by construction.
BruteForceResult trs_brute_force(const TrustRegionInstance& instance,
                                 int grid_points_per_axis);

// min { 1/2 d_B(x)^2 : x in A } decomposed as
//   g1 = indicator of A, g2 = 1/2 ||x||^2 (L = 1),
//   h(x) = 1/2 (||x||^2 - d_B(x)^2) evaluated through p = P_B(x) as
//   <x, p> - 1/2 ||p||^2, with subgradient selection p.
struct FeasibilityInstance {
  SetOracle set_A;
  SetOracle set_B;
  Index dim = 0;
};

Problem build_feasibility(SetOracle set_A, SetOracle set_B, Index dim);

double distance_to_set(const SetOracle& set, const Vector& x);

// A = {x2 >= 1}, B = {x2 <= alpha x1^2} with 0 < alpha < 1/2, plus the point
// x_bar = (0, 1): a fixed point of the iteration that is not a local
// minimizer (nearby feasible points strictly improve the objective).
struct Example43 {
  Problem problem;
  FeasibilityInstance instance;
  Vector x_bar;
};

Example43 example_4_3_fixture(double alpha);

// 1D fixture f(x) = 3|x| + 3x - |x| = 2|x| + 3x: the origin is a fixed point
// of the iteration (with the subgradient selection sign(0) = 0) yet
// 0 is not in the subdifferential of f there. g1 = 3|x| (prox by soft
// thresholding), g2 = 3x (L = 0), h = |x|.
Problem counterexample_1d();

}  // namespace gppa
