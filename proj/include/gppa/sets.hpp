#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gppa/types.hpp"

namespace gppa {

// A closed set described through a metric projection and a membership test.
// For nonconvex sets the projection commits to one deterministic nearest
// point (ties: lowest piece index, then lexicographically smallest point).
struct SetOracle {
  std::function<Vector(const Vector&)> project;
  std::function<bool(const Vector&)> contains;
  bool is_convex = false;
  std::string name;
};

// --- projections -----------------------------------------------------------

// Euclidean ball {x: ||x|| <= r} centered at the origin.
Vector project_ball(const Vector& x, double r);

// Half-space {z: <a, z> <= beta}; encode >=-sets by negating a and beta.
Vector project_halfspace(const Vector& x, const Vector& a, double beta);

// Axis-aligned box [lo, hi], componentwise clamp.
Vector project_box(const Vector& x, const Vector& lo, const Vector& hi);

// Nearest candidate among the pieces' projections; ties go to the lowest
// piece index.
Vector project_union(const std::vector<SetOracle>& pieces, const Vector& x);

// Region under a parabola, B = {(x1, x2): x2 <= alpha * x1^2}, in R^2.
// alpha = 0 degenerates to the half-space {x2 <= 0}. The nearest boundary
// point solves a cubic in the abscissa, found by interval isolation plus
// bisection; among equidistant candidates the lexicographically smallest
// point wins.
Vector project_parabola_region(const Vector& x, double alpha);

// --- proximal operators ----------------------------------------------------

// prox with parameter t of c * ||.||_1: componentwise shrink by c/t.
Vector soft_threshold(const Vector& x, double c, double t);

// prox of the indicator of a set is its projection, independent of t.
Vector prox_of_indicator(const SetOracle& set, const Vector& z, double t);

// --- set factories ---------------------------------------------------------

SetOracle ball_set(double r, Vector center = Vector());
SetOracle halfspace_set(Vector a, double beta, std::string name = "halfspace");
SetOracle box_set(Vector lo, Vector hi);
SetOracle parabola_region_set(double alpha);
SetOracle singleton_set(Vector p);
SetOracle union_set(std::vector<SetOracle> pieces, std::string name = "union");

}  // namespace gppa
