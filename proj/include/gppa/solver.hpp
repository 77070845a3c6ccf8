#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gppa/oracles.hpp"

namespace gppa {

enum class SolveStatus { converged, max_iters, descent_violation, oracle_error };

const char* to_string(SolveStatus s);

struct SolverConfig {
  // Regularization parameter. Must satisfy t > L, or t > L/2 when
  // g1_convex_stepsize is set and g1 is convex.
  double t = 0.0;
  // Stop when ||x^k - x^{k+1}|| <= epsilon (the raw criterion; see
  // relative_stopping for the opt-in scaled variant).
  double epsilon = 1e-8;
  std::int64_t max_iters = 100000;
  bool g1_convex_stepsize = false;
  // Slack for the per-iteration descent assertion. Unset resolves to
  // 1e-10 * (1 + |f(x0)|) at run start.
  std::optional<double> descent_tolerance;
  bool record_full_points = false;
  // Opt-in: stop when the step is <= epsilon * (1 + ||x^{k+1}||).
  bool relative_stopping = false;
};

struct IterationRecord {
  std::int64_t k = 0;
  double f_value = 0.0;          // f(x^k)
  double step_norm = 0.0;        // ||x^k - x^{k+1}||
  double descent_gap = 0.0;      // f(x^k) - f(x^{k+1}) - ((t-L)/2) step_norm^2
  double criticality_residual = 0.0;
  std::optional<Vector> x;       // x^k, when record_full_points
};

struct Trace {
  std::vector<IterationRecord> records;
  Vector final_x;
  SolveStatus status = SolveStatus::max_iters;
  SolverConfig config_echo;
  std::string problem_name;
  std::string message;  // populated for descent_violation / oracle_error
};

struct GppaStep {
  Vector x_next;
  Vector y;  // the chosen subgradient of h at x
  double step_norm = 0.0;
};

// One iteration: y = h.subgradient(x), then
// x_next = g1.prox(x - (g2.gradient(x) - y)/t, t).
GppaStep gppa_step(const Problem& problem, const Vector& x, double t);

// Full loop with stopping test, descent verification and trace recording.
// Throws std::invalid_argument for an invalid config or x0 outside dom g1;
// oracle failures during the loop surface as status oracle_error.
Trace run_gppa(const Problem& problem, const Vector& x0, const SolverConfig& config);

// ||x - gppa_step(problem, x, t).x_next||. Zero certifies that x is a fixed
// point of the iteration, hence a critical point under the oracle's
// subgradient selection. It can be positive at a critical point whose
// certifying subgradient differs from the selection.
double criticality_residual(const Problem& problem, const Vector& x, double t);

// The strict lower bound the stepsize must exceed for this problem/config
// (L, or L/2 in the convex-g1 mode).
double stepsize_lower_bound(const Problem& problem, const SolverConfig& config);

// Validates t against the bound above plus basic config sanity; throws
// std::invalid_argument with a message naming the violated constraint.
void validate_config(const Problem& problem, const SolverConfig& config);

// --- 1D criticality classification ------------------------------------------

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

enum class Criticality1D { stationary, critical_not_stationary, not_critical };

const char* to_string(Criticality1D c);

// Exact interval arithmetic on 1D convex subdifferentials:
// stationary iff dh is contained in dg1 + grad_g2, critical iff the two
// intervals intersect.
Criticality1D check_criticality_1d(Interval dg1, double grad_g2, Interval dh);

}  // namespace gppa
