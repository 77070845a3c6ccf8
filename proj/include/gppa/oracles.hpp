#pragma once

#include <functional>
#include <optional>
#include <string>

#include "gppa/types.hpp"

namespace gppa {

// Oracle for a proper lower semicontinuous g1, possibly +inf outside its
// domain. prox must return one minimizer of g1(u) + (t/2)||u - z||^2; when
// the prox is set-valued the oracle commits to a deterministic selection.
struct ProxOracle {
  std::function<ExtReal(const Vector&)> evaluate;
  std::function<Vector(const Vector&, double)> prox;  // (z, t) -> point
  std::function<bool(const Vector&)> domain_hint;     // optional
  bool is_convex = false;
};

// Differentiable g2 with L-Lipschitz gradient. L is declared by the caller,
// not estimated.
struct SmoothOracle {
  std::function<double(const Vector&)> evaluate;
  std::function<Vector(const Vector&)> gradient;
  double lipschitz_L = 0.0;
};

// Finite convex h with a deterministic subgradient selection. lipschitz_grad
// is set only when h is differentiable with Lipschitz gradient.
struct ConvexOracle {
  std::function<double(const Vector&)> evaluate;
  std::function<Vector(const Vector&)> subgradient;
  std::optional<double> lipschitz_grad;
};

// The composite objective f = g1 + g2 - h on R^dim. dom f = dom g1.
struct Problem {
  ProxOracle g1;
  SmoothOracle g2;
  ConvexOracle h;
  std::string name;
  Index dim = 0;
};

// f(x) = g1(x) + g2(x) - h(x); +inf exactly when x lies outside dom g1.
ExtReal evaluate_objective(const Problem& problem, const Vector& x);

// Domain membership, preferring the hint when the oracle provides one.
bool in_domain(const Problem& problem, const Vector& x);

// Building blocks for assembling problems.
ProxOracle zero_prox_oracle();    // g1 == 0, prox is the identity
SmoothOracle zero_smooth_oracle();
ConvexOracle zero_convex_oracle();

// g2(x) = (scale/2) ||x||^2, L = scale (scale >= 0).
SmoothOracle quadratic_smooth_oracle(double scale);

}  // namespace gppa
