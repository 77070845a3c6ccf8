#include "gppa/solver.hpp"

#include <cmath>

namespace gppa {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::max_iters: return "max_iters";
    case SolveStatus::descent_violation: return "descent_violation";
    case SolveStatus::oracle_error: return "oracle_error";
  }
  return "unknown";
}

const char* to_string(Criticality1D c) {
  switch (c) {
    case Criticality1D::stationary: return "stationary";
    case Criticality1D::critical_not_stationary: return "critical_not_stationary";
    case Criticality1D::not_critical: return "not_critical";
  }
  return "unknown";
}

GppaStep gppa_step(const Problem& problem, const Vector& x, double t) {
  check_dimension(x, problem.dim, "gppa_step");
  if (!(t > 0)) throw std::invalid_argument("gppa_step: t must be > 0");

  GppaStep step;
  step.y = problem.h.subgradient(x);
  check_dimension(step.y, problem.dim, "gppa_step: h.subgradient output");
  Vector grad = problem.g2.gradient(x);
  check_dimension(grad, problem.dim, "gppa_step: g2.gradient output");

  const Vector z = x - (grad - step.y) / t;
  step.x_next = problem.g1.prox(z, t);
  check_dimension(step.x_next, problem.dim, "gppa_step: g1.prox output");
  step.step_norm = (x - step.x_next).norm();
  return step;
}

double criticality_residual(const Problem& problem, const Vector& x, double t) {
  return gppa_step(problem, x, t).step_norm;
}

double stepsize_lower_bound(const Problem& problem, const SolverConfig& config) {
  const double L = problem.g2.lipschitz_L;
  return (config.g1_convex_stepsize && problem.g1.is_convex) ? 0.5 * L : L;
}

void validate_config(const Problem& problem, const SolverConfig& config) {
  if (!(config.epsilon > 0)) {
    throw std::invalid_argument("solver config: epsilon must be > 0");
  }
  if (config.max_iters <= 0) {
    throw std::invalid_argument("solver config: max_iters must be > 0");
  }
  if (config.descent_tolerance && *config.descent_tolerance < 0) {
    throw std::invalid_argument("solver config: descent_tolerance must be >= 0");
  }
  const double bound = stepsize_lower_bound(problem, config);
  if (!(config.t > bound) || !(config.t > 0)) {
    const bool relaxed = config.g1_convex_stepsize && problem.g1.is_convex;
    throw std::invalid_argument(
        std::string("solver config: stepsize constraint violated, need ") +
        (relaxed ? "t > L/2" : "t > L") + " (t = " + std::to_string(config.t) +
        ", L = " + std::to_string(problem.g2.lipschitz_L) + ")");
  }
}

Trace run_gppa(const Problem& problem, const Vector& x0, const SolverConfig& config) {
  validate_config(problem, config);
  check_dimension(x0, problem.dim, "run_gppa: x0");
  if (!in_domain(problem, x0)) {
    throw std::invalid_argument("run_gppa: x0 is not in dom g1");
  }
  const ExtReal f0 = evaluate_objective(problem, x0);
  if (!f0.is_finite()) {
    throw std::invalid_argument("run_gppa: f(x0) is not finite");
  }

  const double L = problem.g2.lipschitz_L;
  const double t = config.t;
  const bool convex_mode = config.g1_convex_stepsize && problem.g1.is_convex;
  // Recorded gaps always use the baseline factor (t-L)/2; the abort check
  // uses the stronger factor available in the convex-g1 mode.
  const double record_factor = 0.5 * (t - L);
  const double check_factor = convex_mode ? (t - 0.5 * L) : record_factor;
  const double tol = config.descent_tolerance
                         ? *config.descent_tolerance
                         : 1e-10 * (1.0 + std::abs(f0.value()));

  Trace trace;
  trace.config_echo = config;
  trace.config_echo.descent_tolerance = tol;
  trace.problem_name = problem.name;
  trace.records.reserve(64);

  Vector x = x0;
  double fx = f0.value();
  trace.final_x = x;

  for (std::int64_t k = 0; k < config.max_iters; ++k) {
    GppaStep step;
    double f_next = 0.0;
    try {
      step = gppa_step(problem, x, t);
      const ExtReal fn = evaluate_objective(problem, step.x_next);
      if (!fn.is_finite()) {
        throw std::runtime_error("prox returned a point outside dom g1");
      }
      f_next = fn.value();
    } catch (const std::exception& e) {
      trace.status = SolveStatus::oracle_error;
      trace.message = "oracle failure at iteration " + std::to_string(k) + ": " + e.what();
      trace.final_x = x;
      return trace;
    }

    const double step_sq = step.step_norm * step.step_norm;
    IterationRecord rec;
    rec.k = k;
    rec.f_value = fx;
    rec.step_norm = step.step_norm;
    rec.descent_gap = (fx - f_next) - record_factor * step_sq;
    rec.criticality_residual = step.step_norm;
    if (config.record_full_points) rec.x = x;
    trace.records.push_back(std::move(rec));

    const double check_gap = (fx - f_next) - check_factor * step_sq;
    if (check_gap < -tol) {
      trace.status = SolveStatus::descent_violation;
      trace.message = "descent violated at iteration " + std::to_string(k) +
                      " (gap " + std::to_string(check_gap) +
                      " < -tolerance); an oracle contract is inconsistent, "
                      "most often an understated Lipschitz constant";
      trace.final_x = step.x_next;
      return trace;
    }

    x = step.x_next;
    fx = f_next;
    trace.final_x = x;

    const double stop_at = config.relative_stopping
                               ? config.epsilon * (1.0 + x.norm())
                               : config.epsilon;
    if (step.step_norm <= stop_at) {
      trace.status = SolveStatus::converged;
      return trace;
    }
  }
  trace.status = SolveStatus::max_iters;
  return trace;
}

Criticality1D check_criticality_1d(Interval dg1, double grad_g2, Interval dh) {
  if (!(dg1.lo <= dg1.hi)) throw std::invalid_argument("check_criticality_1d: malformed dg1 interval");
  if (!(dh.lo <= dh.hi)) throw std::invalid_argument("check_criticality_1d: malformed dh interval");
  const double sum_lo = dg1.lo + grad_g2;
  const double sum_hi = dg1.hi + grad_g2;
  if (dh.lo >= sum_lo && dh.hi <= sum_hi) return Criticality1D::stationary;
  if (std::max(dh.lo, sum_lo) <= std::min(dh.hi, sum_hi)) {
    return Criticality1D::critical_not_stationary;
  }
  return Criticality1D::not_critical;
}

}  // namespace gppa
