#include "gppa/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gppa {

const char* to_string(RateRegime r) {
  switch (r) {
    case RateRegime::finite: return "finite";
    case RateRegime::linear: return "linear";
    case RateRegime::sublinear: return "sublinear";
    case RateRegime::inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

struct Fit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  bool valid = false;
};

Fit least_squares(const std::vector<double>& u, const std::vector<double>& y) {
  Fit fit;
  const std::size_t m = u.size();
  if (m < 2) return fit;
  double su = 0, sy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    su += u[i];
    sy += y[i];
  }
  const double mu = su / m, my = sy / m;
  double suu = 0, suy = 0, syy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    suu += (u[i] - mu) * (u[i] - mu);
    suy += (u[i] - mu) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (suu == 0.0) return fit;
  fit.slope = suy / suu;
  fit.intercept = my - fit.slope * mu;
  fit.r2 = syy == 0.0 ? 1.0 : (suy * suy) / (suu * syy);
  fit.valid = true;
  return fit;
}

}  // namespace

RateReport classify_rate(const Trace& trace) {
  RateReport report;
  const auto& recs = trace.records;

  if (trace.status != SolveStatus::converged) {
    report.note = std::string("trace status is ") + to_string(trace.status) +
                  ", rate fitting needs a converged run";
    return report;
  }
  // Finite termination is declared only on an exactly-zero final step; an
  // epsilon-stop is indistinguishable from fast linear convergence.
  if (!recs.empty() && recs.back().step_norm == 0.0) {
    report.regime = RateRegime::finite;
    report.theta_hat = 0.0;
    report.fit_r2 = 1.0;
    return report;
  }
  if (recs.size() < 20) {
    report.note = "too few records (" + std::to_string(recs.size()) + " < 20)";
    return report;
  }

  const std::size_t n = recs.size();
  // Delta_k = sum of step norms from k on, truncated at the last record;
  // the truncation error is below the stopping tolerance.
  std::vector<double> delta(n);
  double acc = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    acc += recs[i].step_norm;
    delta[i] = acc;
  }

  // Drop the transient head and the floating-point floor at the tail.
  const std::size_t lo = n / 4;
  const std::size_t hi = n - 5;
  std::vector<double> ks, log_ks, log_delta;
  for (std::size_t k = lo; k < hi; ++k) {
    if (delta[k] <= 0.0) break;
    ks.push_back(static_cast<double>(k));
    log_ks.push_back(std::log(static_cast<double>(k) + 1.0));
    log_delta.push_back(std::log(delta[k]));
  }
  report.tail_start = static_cast<std::int64_t>(lo);

  const Fit lin = least_squares(ks, log_delta);       // log Delta_k ~ k
  const Fit sub = least_squares(log_ks, log_delta);   // log Delta_k ~ log k

  const bool lin_ok = lin.valid && lin.slope < 0.0;
  const bool sub_ok = sub.valid && sub.slope < 0.0;
  const double lin_r2 = lin_ok ? lin.r2 : -1.0;
  const double sub_r2 = sub_ok ? sub.r2 : -1.0;

  if (std::max(lin_r2, sub_r2) < 0.95) {
    report.fit_r2 = std::max({lin.valid ? lin.r2 : 0.0, sub.valid ? sub.r2 : 0.0, 0.0});
    report.note = "no decaying fit reached r^2 >= 0.95";
    return report;
  }

  if (lin_r2 >= sub_r2) {
    report.regime = RateRegime::linear;
    report.q = std::exp(lin.slope);
    report.theta_hat = 0.5;
    report.fit_r2 = lin.r2;
  } else {
    report.regime = RateRegime::sublinear;
    report.exponent = sub.slope;
    // slope = (1-theta)/(1-2 theta)  =>  theta = (slope-1)/(2 slope - 1)
    report.theta_hat = (sub.slope - 1.0) / (2.0 * sub.slope - 1.0);
    report.fit_r2 = sub.r2;
  }
  return report;
}

DescentReport verify_descent_report(const std::vector<IterationRecord>& records,
                                    double t, double L, bool convex_g1,
                                    std::optional<double> tolerance) {
  DescentReport report;
  report.factor = convex_g1 ? (t - 0.5 * L) : 0.5 * (t - L);
  if (records.empty()) {
    report.tolerance = tolerance.value_or(0.0);
    return report;
  }
  report.tolerance =
      tolerance.value_or(1e-10 * (1.0 + std::abs(records.front().f_value)));

  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < records.size(); ++k) {
    const double step = records[k].step_norm;
    const double gap = (records[k].f_value - records[k + 1].f_value) -
                       report.factor * step * step;
    report.gaps.push_back(gap);
    min_gap = std::min(min_gap, gap);
    if (gap < -report.tolerance) ++report.violations;
  }
  report.min_gap = report.gaps.empty() ? 0.0 : min_gap;
  return report;
}

BoundednessReport boundedness_monitor(const Trace& trace, double multiple) {
  if (trace.records.empty()) {
    throw std::invalid_argument("boundedness_monitor: empty trace");
  }
  for (const auto& rec : trace.records) {
    if (!rec.x) {
      throw std::invalid_argument(
          "boundedness_monitor: trace has no recorded points; rerun with "
          "record_full_points enabled");
    }
  }
  BoundednessReport report;
  const double x0_norm = trace.records.front().x->norm();
  report.threshold = multiple * (x0_norm + 1.0);
  report.max_norm = trace.final_x.size() > 0 ? trace.final_x.norm() : 0.0;
  for (const auto& rec : trace.records) {
    report.max_norm = std::max(report.max_norm, rec.x->norm());
  }
  report.flagged = report.max_norm > report.threshold;
  return report;
}

}  // namespace gppa
