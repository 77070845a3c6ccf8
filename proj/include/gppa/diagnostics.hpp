#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gppa/solver.hpp"

namespace gppa {

enum class RateRegime { finite, linear, sublinear, inconclusive };

const char* to_string(RateRegime r);

// Convergence-rate estimate from the tail sums of step norms. theta_hat is
// the KL exponent implied by the regime: 0 for finite termination, 1/2 for a
// linear fit, (e-1)/(2e-1) for a sublinear fit with exponent e < 0.
struct RateReport {
  RateRegime regime = RateRegime::inconclusive;
  std::optional<double> q;         // linear factor, in (0, 1)
  std::optional<double> exponent;  // sublinear power, < 0
  std::optional<double> theta_hat;
  double fit_r2 = 0.0;
  std::int64_t tail_start = 0;
  std::string note;
};

RateReport classify_rate(const Trace& trace);

// Re-checks f(x^k) - f(x^{k+1}) >= factor * ||x^k - x^{k+1}||^2 over the
// recorded values, with factor (t-L)/2, or (t - L/2) when convex_g1 is set.
// Unset tolerance resolves to 1e-10 * (1 + |f_0|).
struct DescentReport {
  std::vector<double> gaps;
  double min_gap = 0.0;
  std::int64_t violations = 0;
  double tolerance = 0.0;
  double factor = 0.0;
};

DescentReport verify_descent_report(const std::vector<IterationRecord>& records,
                                    double t, double L, bool convex_g1,
                                    std::optional<double> tolerance = {});

// Flags iterate norms growing past multiple * (||x^0|| + 1) — evidence
// against the boundedness hypothesis behind cluster-point criticality.
// Requires the trace to carry full points.
struct BoundednessReport {
  double max_norm = 0.0;
  double threshold = 0.0;
  bool flagged = false;
};

BoundednessReport boundedness_monitor(const Trace& trace, double multiple = 1e6);

}  // namespace gppa
