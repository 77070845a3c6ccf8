#include "gppa/sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <utility>

namespace gppa {

namespace {

// Membership tests tolerate the rounding of projected boundary points;
// projections themselves use the exact predicate.
constexpr double kMembershipSlack = 1e-10;

bool lex_less(const Vector& a, const Vector& b) {
  for (Index i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

// Real roots of c3*u^3 + c1*u + c0 (c3 > 0) by interval isolation and
// bisection. Brackets come from the critical points of the cubic and a
// Cauchy-style bound on root magnitude.
std::vector<double> depressed_cubic_roots(double c3, double c1, double c0) {
  const auto p = [&](double u) { return (c3 * u * u + c1) * u + c0; };

  double bound = 1.0 + (std::abs(c1) + std::abs(c0)) / c3;
  while (p(bound) <= 0.0) bound *= 2.0;
  while (p(-bound) >= 0.0) bound *= 2.0;

  std::vector<double> edges;
  edges.push_back(-bound);
  if (c1 < 0.0) {
    const double uc = std::sqrt(-c1 / (3.0 * c3));
    if (-uc > -bound && uc < bound) {
      edges.push_back(-uc);
      edges.push_back(uc);
    }
  }
  edges.push_back(bound);

  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    double lo = edges[i], hi = edges[i + 1];
    double plo = p(lo), phi = p(hi);
    if (plo == 0.0) {
      roots.push_back(lo);
      continue;
    }
    if (phi == 0.0) {
      if (i + 2 == edges.size()) roots.push_back(hi);
      continue;
    }
    if ((plo < 0.0) == (phi < 0.0)) continue;
    for (int iter = 0; iter < 200; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      const double pm = p(mid);
      if (pm == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((pm < 0.0) == (plo < 0.0)) {
        lo = mid;
        plo = pm;
      } else {
        hi = mid;
      }
    }
    roots.push_back(0.5 * (lo + hi));
  }
  return roots;
}

}  // namespace

Vector project_ball(const Vector& x, double r) {
  if (!(r > 0)) throw std::invalid_argument("project_ball: radius must be > 0");
  const double n = x.norm();
  if (n <= r) return x;
  return (r / n) * x;
}

Vector project_halfspace(const Vector& x, const Vector& a, double beta) {
  check_dimension(a, x.size(), "project_halfspace: normal");
  const double a2 = a.squaredNorm();
  if (a2 == 0.0) throw std::invalid_argument("project_halfspace: zero normal vector");
  const double excess = a.dot(x) - beta;
  if (excess <= 0.0) return x;
  return x - (excess / a2) * a;
}

Vector project_box(const Vector& x, const Vector& lo, const Vector& hi) {
  check_dimension(lo, x.size(), "project_box: lo");
  check_dimension(hi, x.size(), "project_box: hi");
  for (Index i = 0; i < x.size(); ++i) {
    if (lo[i] > hi[i]) {
      throw std::invalid_argument("project_box: lo > hi in coordinate " + std::to_string(i));
    }
  }
  return x.cwiseMax(lo).cwiseMin(hi);
}

Vector project_union(const std::vector<SetOracle>& pieces, const Vector& x) {
  if (pieces.empty()) throw std::invalid_argument("project_union: no pieces");
  Vector best;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (const auto& piece : pieces) {
    Vector cand = piece.project(x);
    const double d2 = (cand - x).squaredNorm();
    if (d2 < best_d2) {
      best_d2 = d2;
      best = std::move(cand);
    }
  }
  return best;
}

Vector project_parabola_region(const Vector& x, double alpha) {
  check_dimension(x, 2, "project_parabola_region");
  if (alpha == 0.0) {
    Vector a(2);
    a << 0.0, 1.0;
    return project_halfspace(x, a, 0.0);
  }
  const double x1 = x[0], x2 = x[1];
  if (x2 <= alpha * x1 * x1) return x;

  // Stationarity of u -> (u - x1)^2 + (alpha u^2 - x2)^2 on the boundary:
  // 2 alpha^2 u^3 + (1 - 2 alpha x2) u - x1 = 0.
  const std::vector<double> roots =
      depressed_cubic_roots(2.0 * alpha * alpha, 1.0 - 2.0 * alpha * x2, -x1);

  Vector best(2);
  double best_d2 = std::numeric_limits<double>::infinity();
  for (double u : roots) {
    Vector cand(2);
    cand << u, alpha * u * u;
    const double d2 = (cand - x).squaredNorm();
    if (d2 < best_d2 || (d2 == best_d2 && lex_less(cand, best))) {
      best_d2 = d2;
      best = cand;
    }
  }
  return best;
}

Vector soft_threshold(const Vector& x, double c, double t) {
  if (c < 0) throw std::invalid_argument("soft_threshold: c must be >= 0");
  if (!(t > 0)) throw std::invalid_argument("soft_threshold: t must be > 0");
  const double shrink = c / t;
  Vector out(x.size());
  for (Index i = 0; i < x.size(); ++i) {
    const double mag = std::abs(x[i]) - shrink;
    out[i] = mag > 0.0 ? (x[i] > 0.0 ? mag : -mag) : 0.0;
  }
  return out;
}

Vector prox_of_indicator(const SetOracle& set, const Vector& z, double t) {
  if (!(t > 0)) throw std::invalid_argument("prox_of_indicator: t must be > 0");
  return set.project(z);
}

SetOracle ball_set(double r, Vector center) {
  if (!(r > 0)) throw std::invalid_argument("ball_set: radius must be > 0");
  SetOracle s;
  s.is_convex = true;
  s.name = "ball(r=" + std::to_string(r) + ")";
  if (center.size() == 0) {
    s.project = [r](const Vector& x) { return project_ball(x, r); };
    s.contains = [r](const Vector& x) {
      return x.norm() <= r + kMembershipSlack * std::max(1.0, r);
    };
  } else {
    s.project = [r, center](const Vector& x) {
      return Vector(center + project_ball(x - center, r));
    };
    s.contains = [r, center](const Vector& x) {
      return (x - center).norm() <= r + kMembershipSlack * std::max(1.0, r);
    };
  }
  return s;
}

SetOracle halfspace_set(Vector a, double beta, std::string name) {
  if (a.squaredNorm() == 0.0) throw std::invalid_argument("halfspace_set: zero normal vector");
  SetOracle s;
  s.is_convex = true;
  s.name = std::move(name);
  const double scale = std::max({1.0, std::abs(beta), a.cwiseAbs().maxCoeff()});
  s.project = [a, beta](const Vector& x) { return project_halfspace(x, a, beta); };
  s.contains = [a, beta, scale](const Vector& x) {
    return a.dot(x) <= beta + kMembershipSlack * scale * std::max(1.0, x.cwiseAbs().maxCoeff());
  };
  return s;
}

SetOracle box_set(Vector lo, Vector hi) {
  check_dimension(hi, lo.size(), "box_set: hi");
  for (Index i = 0; i < lo.size(); ++i) {
    if (lo[i] > hi[i]) throw std::invalid_argument("box_set: lo > hi");
  }
  SetOracle s;
  s.is_convex = true;
  s.name = "box";
  s.project = [lo, hi](const Vector& x) { return project_box(x, lo, hi); };
  s.contains = [lo, hi](const Vector& x) {
    // Clamp output is bit-exact, no slack needed.
    for (Index i = 0; i < x.size(); ++i) {
      if (x[i] < lo[i] || x[i] > hi[i]) return false;
    }
    return true;
  };
  return s;
}

SetOracle parabola_region_set(double alpha) {
  SetOracle s;
  s.is_convex = alpha <= 0.0;  // hypograph of a concave (or linear) function
  s.name = "parabola(alpha=" + std::to_string(alpha) + ")";
  s.project = [alpha](const Vector& x) { return project_parabola_region(x, alpha); };
  s.contains = [alpha](const Vector& x) {
    check_dimension(x, 2, "parabola contains");
    const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
    return x[1] <= alpha * x[0] * x[0] + kMembershipSlack * scale;
  };
  return s;
}

SetOracle singleton_set(Vector p) {
  SetOracle s;
  s.is_convex = true;
  s.name = "point";
  s.project = [p](const Vector& x) {
    check_dimension(x, p.size(), "singleton project");
    return p;
  };
  s.contains = [p](const Vector& x) {
    check_dimension(x, p.size(), "singleton contains");
    return (x - p).norm() <= kMembershipSlack * std::max(1.0, p.norm());
  };
  return s;
}

SetOracle union_set(std::vector<SetOracle> pieces, std::string name) {
  if (pieces.empty()) throw std::invalid_argument("union_set: no pieces");
  SetOracle s;
  s.is_convex = false;
  s.name = std::move(name);
  auto shared = std::make_shared<std::vector<SetOracle>>(std::move(pieces));
  s.project = [shared](const Vector& x) { return project_union(*shared, x); };
  s.contains = [shared](const Vector& x) {
    return std::any_of(shared->begin(), shared->end(),
                       [&](const SetOracle& p) { return p.contains(x); });
  };
  return s;
}

}  // namespace gppa
