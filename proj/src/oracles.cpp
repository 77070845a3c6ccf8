#include "gppa/oracles.hpp"

namespace gppa {

ExtReal evaluate_objective(const Problem& problem, const Vector& x) {
  check_dimension(x, problem.dim, "evaluate_objective");
  const ExtReal g1 = problem.g1.evaluate(x);
  if (!g1.is_finite()) return ExtReal::infinity();
  return ExtReal(g1.value() + problem.g2.evaluate(x) - problem.h.evaluate(x));
}

bool in_domain(const Problem& problem, const Vector& x) {
  check_dimension(x, problem.dim, "in_domain");
  if (problem.g1.domain_hint) return problem.g1.domain_hint(x);
  return problem.g1.evaluate(x).is_finite();
}

ProxOracle zero_prox_oracle() {
  ProxOracle o;
  o.evaluate = [](const Vector&) { return ExtReal(0.0); };
  o.prox = [](const Vector& z, double) { return z; };
  o.is_convex = true;
  return o;
}

SmoothOracle zero_smooth_oracle() {
  SmoothOracle o;
  o.evaluate = [](const Vector&) { return 0.0; };
  o.gradient = [](const Vector& x) { return Vector(Vector::Zero(x.size())); };
  o.lipschitz_L = 0.0;
  return o;
}

ConvexOracle zero_convex_oracle() {
  ConvexOracle o;
  o.evaluate = [](const Vector&) { return 0.0; };
  o.subgradient = [](const Vector& x) { return Vector(Vector::Zero(x.size())); };
  o.lipschitz_grad = 0.0;
  return o;
}

SmoothOracle quadratic_smooth_oracle(double scale) {
  if (scale < 0) throw std::invalid_argument("quadratic_smooth_oracle: scale must be >= 0");
  SmoothOracle o;
  o.evaluate = [scale](const Vector& x) { return 0.5 * scale * x.squaredNorm(); };
  o.gradient = [scale](const Vector& x) { return Vector(scale * x); };
  o.lipschitz_L = scale;
  return o;
}

}  // namespace gppa
