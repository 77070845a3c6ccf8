#include "gppa/gallery.hpp"

#include <cmath>
#include <memory>
#include <utility>
#include <vector>

#include "gppa/eigenvalue.hpp"

namespace gppa {

double TrustRegionInstance::quadratic(const Vector& x) const {
  return 0.5 * x.dot(A * x) + b.dot(x);
}

TrustRegionInstance make_trust_region_instance(Matrix A, Vector b, double r,
                                               std::optional<double> rho,
                                               double eig_tol) {
  if (A.rows() != A.cols() || A.rows() == 0) {
    throw std::invalid_argument("trust region: A must be square and nonempty");
  }
  check_dimension(b, A.rows(), "trust region: b");
  if (!(r > 0)) throw std::invalid_argument("trust region: r must be > 0");

  const double lambda_max = estimate_symmetric_max_eigenvalue(A, eig_tol);
  TrustRegionInstance inst;
  if (rho) {
    const double slack = eig_tol * (1.0 + std::abs(lambda_max));
    if (*rho < lambda_max - slack) {
      throw std::invalid_argument(
          "trust region: rho I - A is not positive semidefinite (rho = " +
          std::to_string(*rho) + " < lambda_max(A) ~= " + std::to_string(lambda_max) + ")");
    }
    if (*rho < 0.0) {
      throw std::invalid_argument(
          "trust region: rho must be >= 0 (it is the Lipschitz constant of grad g2)");
    }
    inst.rho = *rho;
  } else {
    // Clamped at zero: for negative-definite A the shift formula would go
    // negative, and rho doubles as the declared Lipschitz constant.
    inst.rho = std::max(lambda_max + 1e-6 * (1.0 + std::abs(lambda_max)), 0.0);
  }
  inst.A = std::move(A);
  inst.b = std::move(b);
  inst.r = r;
  const Matrix shifted = inst.rho * Matrix::Identity(inst.A.rows(), inst.A.cols()) - inst.A;
  inst.lipschitz_h = estimate_symmetric_max_eigenvalue(shifted, eig_tol);
  return inst;
}

Problem build_trust_region(const TrustRegionInstance& instance) {
  auto inst = std::make_shared<const TrustRegionInstance>(instance);
  const double r = inst->r;
  const double rho = inst->rho;
  const Index n = inst->dim();

  Problem p;
  p.dim = n;
  p.name = "trs";

  const SetOracle ball = ball_set(r);
  p.g1.evaluate = [ball, n](const Vector& x) {
    check_dimension(x, n, "trs g1");
    return ball.contains(x) ? ExtReal(0.0) : ExtReal::infinity();
  };
  p.g1.prox = [r](const Vector& z, double) { return project_ball(z, r); };
  p.g1.domain_hint = ball.contains;
  p.g1.is_convex = true;

  p.g2.evaluate = [inst, rho](const Vector& x) {
    return 0.5 * rho * x.squaredNorm() + inst->b.dot(x);
  };
  p.g2.gradient = [inst, rho](const Vector& x) { return Vector(rho * x + inst->b); };
  p.g2.lipschitz_L = rho;

  p.h.evaluate = [inst, rho](const Vector& x) {
    return 0.5 * (rho * x.squaredNorm() - x.dot(inst->A * x));
  };
  p.h.subgradient = [inst, rho](const Vector& x) {
    return Vector(rho * x - inst->A * x);
  };
  p.h.lipschitz_grad = inst->lipschitz_h;
  return p;
}

Problem build_trust_region(Matrix A, Vector b, double r, std::optional<double> rho) {
  return build_trust_region(
      make_trust_region_instance(std::move(A), std::move(b), r, rho));
}

Vector trs_closed_form_step(const TrustRegionInstance& instance, const Vector& x,
                            double t) {
  check_dimension(x, instance.dim(), "trs_closed_form_step");
  if (!(t > 0)) throw std::invalid_argument("trs_closed_form_step: t must be > 0");
  const double tr = t + instance.rho;
  const Vector w = tr * x - instance.A * x - instance.b;
  return project_ball(w / tr, instance.r);
}

namespace {

// One pass of the local search: best point among the current iterate and the
// pattern offsets (projected into the ball when they fall outside).
bool pattern_improve(const TrustRegionInstance& inst, Vector& x, double& fx,
                     double delta) {
  const Index n = inst.dim();
  std::vector<int> idx(static_cast<std::size_t>(n), -2);
  bool improved = false;
  while (true) {
    Vector cand = x;
    for (Index i = 0; i < n; ++i) cand[i] += idx[static_cast<std::size_t>(i)] * delta;
    if (cand.norm() > inst.r) cand = project_ball(cand, inst.r);
    const double fc = inst.quadratic(cand);
    if (fc < fx) {
      fx = fc;
      x = cand;
      improved = true;
    }
    // advance the mixed-radix counter over offsets {-2,-1,0,1,2}^n
    Index j = 0;
    for (; j < n; ++j) {
      auto& d = idx[static_cast<std::size_t>(j)];
      if (++d <= 2) break;
      d = -2;
    }
    if (j == n) break;
  }
  return improved;
}

}  // namespace

BruteForceResult trs_brute_force(const TrustRegionInstance& instance,
                                 int grid_points_per_axis) {
  const Index n = instance.dim();
  if (n > 3) {
    throw std::invalid_argument("trs_brute_force: desk-scale oracle, n must be <= 3");
  }
  if (grid_points_per_axis < 101) {
    throw std::invalid_argument("trs_brute_force: need at least 101 grid points per axis");
  }

  const double r = instance.r;
  const double h = 2.0 * r / (grid_points_per_axis - 1);

  Vector best = Vector::Zero(n);
  double best_f = instance.quadratic(best);

  Vector x(n);
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  while (true) {
    for (Index i = 0; i < n; ++i) x[i] = -r + h * idx[static_cast<std::size_t>(i)];
    if (x.norm() <= r) {
      const double f = instance.quadratic(x);
      if (f < best_f) {
        best_f = f;
        best = x;
      }
    }
    Index j = 0;
    for (; j < n; ++j) {
      auto& d = idx[static_cast<std::size_t>(j)];
      if (++d < grid_points_per_axis) break;
      d = 0;
    }
    if (j == n) break;
  }

  // Shrinking-step refinement from the best grid point.
  double delta = 2.0 * h;
  const double floor = 1e-14 * std::max(1.0, r);
  for (int round = 0; delta > floor && round < 100000; ++round) {
    if (!pattern_improve(instance, best, best_f, delta)) delta *= 0.5;
  }
  return BruteForceResult{best, best_f};
}

Problem build_feasibility(SetOracle set_A, SetOracle set_B, Index dim) {
  if (dim <= 0) throw std::invalid_argument("build_feasibility: dim must be > 0");
  auto A = std::make_shared<const SetOracle>(std::move(set_A));
  auto B = std::make_shared<const SetOracle>(std::move(set_B));
  // Nonemptiness: projecting the origin must land inside each set.
  const Vector origin = Vector::Zero(dim);
  if (!A->contains(A->project(origin))) {
    throw std::invalid_argument("build_feasibility: set A has no reachable point");
  }
  if (!B->contains(B->project(origin))) {
    throw std::invalid_argument("build_feasibility: set B has no reachable point");
  }

  Problem p;
  p.dim = dim;
  p.name = "feasibility(" + A->name + "," + B->name + ")";

  p.g1.evaluate = [A, dim](const Vector& x) {
    check_dimension(x, dim, "feasibility g1");
    return A->contains(x) ? ExtReal(0.0) : ExtReal::infinity();
  };
  p.g1.prox = [A](const Vector& z, double) { return A->project(z); };
  p.g1.domain_hint = A->contains;
  p.g1.is_convex = A->is_convex;

  p.g2 = quadratic_smooth_oracle(1.0);

  // h(x) = <x, p> - ||p||^2 / 2 with p = P_B(x) equals
  // (||x||^2 - d_B(x)^2) / 2 without the cancellation.
  p.h.evaluate = [B](const Vector& x) {
    const Vector p_ = B->project(x);
    return x.dot(p_) - 0.5 * p_.squaredNorm();
  };
  p.h.subgradient = [B](const Vector& x) { return B->project(x); };
  if (B->is_convex) p.h.lipschitz_grad = 1.0;
  return p;
}

double distance_to_set(const SetOracle& set, const Vector& x) {
  return (set.project(x) - x).norm();
}

Example43 example_4_3_fixture(double alpha) {
  if (!(alpha > 0.0 && alpha < 0.5)) {
    throw std::invalid_argument("example_4_3_fixture: alpha must lie in (0, 1/2)");
  }
  Vector a(2);
  a << 0.0, -1.0;  // x2 >= 1 encoded as <(0,-1), x> <= -1
  Example43 fx;
  fx.instance.set_A = halfspace_set(a, -1.0, "halfspace(x2>=1)");
  fx.instance.set_B = parabola_region_set(alpha);
  fx.instance.dim = 2;
  fx.problem = build_feasibility(fx.instance.set_A, fx.instance.set_B, 2);
  fx.problem.name = "example-4-3";
  fx.x_bar = Vector(2);
  fx.x_bar << 0.0, 1.0;
  return fx;
}

Problem counterexample_1d() {
  Problem p;
  p.dim = 1;
  p.name = "counterexample-1d";

  p.g1.evaluate = [](const Vector& x) { return ExtReal(3.0 * std::abs(x[0])); };
  p.g1.prox = [](const Vector& z, double t) { return soft_threshold(z, 3.0, t); };
  p.g1.is_convex = true;

  p.g2.evaluate = [](const Vector& x) { return 3.0 * x[0]; };
  p.g2.gradient = [](const Vector& x) {
    Vector g(x.size());
    g.setConstant(3.0);
    return g;
  };
  p.g2.lipschitz_L = 0.0;

  // Subgradient selection for |x|: sign(x), which picks 0 at the kink.
  p.h.evaluate = [](const Vector& x) { return std::abs(x[0]); };
  p.h.subgradient = [](const Vector& x) {
    Vector g(1);
    g[0] = x[0] > 0.0 ? 1.0 : (x[0] < 0.0 ? -1.0 : 0.0);
    return g;
  };
  return p;
}

}  // namespace gppa
