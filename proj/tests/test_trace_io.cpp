#include <doctest.h>

#include <sstream>

#include "gppa/gallery.hpp"
#include "gppa/trace_io.hpp"
#include "test_helpers.hpp"

using namespace gppa;

TEST_CASE("format_double: shortest decimal round-trips exactly") {
  SplitMix64 rng(61);
  for (int i = 0; i < 2000; ++i) {
    double v = rng.uniform(-1e6, 1e6);
    if (i % 3 == 0) v *= 1e-12;
    const std::string s = format_double(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(format_double(12.5) == "12.5");
  CHECK(format_double(0.0) == "0");
}

TEST_CASE("trace csv: header is bit-exact and round-trips records") {
  SplitMix64 rng(62);
  const TrustRegionInstance inst = testing::random_trs_instance(2, rng);
  const Problem p = build_trust_region(inst);
  SolverConfig cfg;
  cfg.t = 1.5 * inst.rho;
  cfg.record_full_points = true;
  const Trace trace = run_gppa(p, testing::random_point_in_ball(2, 1.0, rng), cfg);

  std::ostringstream out;
  write_trace_csv(trace, out);
  const std::string text = out.str();
  CHECK(text.rfind("k,f_value,step_norm,descent_gap,criticality_residual,x_0,x_1\n", 0) == 0);

  std::istringstream in(text);
  const ParsedTrace parsed = read_trace_csv(in);
  REQUIRE(parsed.records.size() == trace.records.size());
  CHECK(parsed.point_dim == 2);
  for (std::size_t i = 0; i < parsed.records.size(); ++i) {
    CHECK(parsed.records[i].k == trace.records[i].k);
    CHECK(parsed.records[i].f_value == trace.records[i].f_value);
    CHECK(parsed.records[i].step_norm == trace.records[i].step_norm);
    CHECK(parsed.records[i].descent_gap == trace.records[i].descent_gap);
    CHECK(parsed.records[i].criticality_residual == trace.records[i].criticality_residual);
    CHECK((*parsed.records[i].x - *trace.records[i].x).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("trace csv: pointless traces omit the x columns") {
  const Problem p = counterexample_1d();
  SolverConfig cfg;
  cfg.t = 4.0;
  Vector x0(1);
  x0 << 1.0;
  const Trace trace = run_gppa(p, x0, cfg);
  std::ostringstream out;
  write_trace_csv(trace, out);
  CHECK(out.str().rfind("k,f_value,step_norm,descent_gap,criticality_residual\n", 0) == 0);
  std::istringstream in(out.str());
  CHECK(read_trace_csv(in).point_dim == -1);
}

TEST_CASE("trace csv: schema violations are rejected") {
  std::istringstream empty("");
  CHECK_THROWS_AS(read_trace_csv(empty), std::runtime_error);
  std::istringstream bad_header("a,b,c\n1,2,3\n");
  CHECK_THROWS_AS(read_trace_csv(bad_header), std::runtime_error);
  std::istringstream no_rows("k,f_value,step_norm,descent_gap,criticality_residual\n");
  CHECK_THROWS_AS(read_trace_csv(no_rows), std::runtime_error);
  std::istringstream bad_field(
      "k,f_value,step_norm,descent_gap,criticality_residual\n0,oops,0,0,0\n");
  CHECK_THROWS_AS(read_trace_csv(bad_field), std::runtime_error);
  std::istringstream short_row(
      "k,f_value,step_norm,descent_gap,criticality_residual\n0,1.0,0.5\n");
  CHECK_THROWS_AS(read_trace_csv(short_row), std::runtime_error);
}

TEST_CASE("json helpers: resolved config and report fields serialize") {
  SolverConfig cfg;
  cfg.t = 3.0;
  cfg.descent_tolerance = 1e-9;
  const nlohmann::json j = to_json(cfg);
  CHECK(j["t"] == 3.0);
  CHECK(j["descent_tolerance"] == 1e-9);
  CHECK(j["max_iters"] == 100000);

  RateReport rr;
  rr.regime = RateRegime::linear;
  rr.q = 0.5;
  rr.theta_hat = 0.5;
  rr.fit_r2 = 0.9999;
  const nlohmann::json rj = to_json(rr);
  CHECK(rj["regime"] == "linear");
  CHECK(rj["q"] == 0.5);
  CHECK(rj["exponent"].is_null());
}
