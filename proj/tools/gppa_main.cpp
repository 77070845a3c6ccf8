#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "gppa/diagnostics.hpp"
#include "gppa/gallery.hpp"
#include "gppa/rng.hpp"
#include "gppa/sets.hpp"
#include "gppa/solver.hpp"
#include "gppa/trace_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

bool log_enabled() {
  const char* v = std::getenv("GPPA_LOG");
  return v != nullptr && *v != '\0';
}

json load_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path.string());
  json j;
  in >> j;
  return j;
}

gppa::Vector to_vector(const json& arr, const char* what) {
  if (!arr.is_array()) throw std::runtime_error(std::string(what) + ": expected an array");
  gppa::Vector v(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) v[static_cast<gppa::Index>(i)] = arr[i].get<double>();
  return v;
}

json from_vector(const gppa::Vector& v) {
  json arr = json::array();
  for (gppa::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

gppa::Matrix to_matrix(const json& arr, gppa::Index n, const char* what) {
  if (!arr.is_array() || arr.size() != static_cast<std::size_t>(n * n)) {
    throw std::runtime_error(std::string(what) +
                             ": expected a row-major flat array of length n*n");
  }
  gppa::Matrix A(n, n);
  for (gppa::Index i = 0; i < n; ++i) {
    for (gppa::Index j = 0; j < n; ++j) {
      A(i, j) = arr[static_cast<std::size_t>(i * n + j)].get<double>();
    }
  }
  return A;
}

gppa::SetOracle build_set(const json& spec) {
  const std::string type = spec.at("type").get<std::string>();
  if (type == "ball") {
    gppa::Vector center;
    if (spec.contains("center")) center = to_vector(spec.at("center"), "ball center");
    return gppa::ball_set(spec.at("r").get<double>(), center);
  }
  if (type == "halfspace") {
    return gppa::halfspace_set(to_vector(spec.at("a"), "halfspace a"),
                               spec.at("beta").get<double>());
  }
  if (type == "box") {
    return gppa::box_set(to_vector(spec.at("lo"), "box lo"),
                         to_vector(spec.at("hi"), "box hi"));
  }
  if (type == "parabola") {
    return gppa::parabola_region_set(spec.at("alpha").get<double>());
  }
  if (type == "point") {
    return gppa::singleton_set(to_vector(spec.at("p"), "point p"));
  }
  if (type == "union") {
    std::vector<gppa::SetOracle> pieces;
    for (const auto& piece : spec.at("pieces")) pieces.push_back(build_set(piece));
    return gppa::union_set(std::move(pieces));
  }
  throw std::runtime_error("unknown set type '" + type + "'");
}

gppa::Problem build_problem(const json& spec) {
  const std::string name = spec.at("name").get<std::string>();
  if (name == "trs") {
    const auto n = spec.at("n").get<gppa::Index>();
    std::optional<double> rho;
    if (spec.contains("rho") && !spec.at("rho").is_null()) rho = spec.at("rho").get<double>();
    return gppa::build_trust_region(to_matrix(spec.at("A"), n, "trs A"),
                                    to_vector(spec.at("b"), "trs b"),
                                    spec.at("r").get<double>(), rho);
  }
  if (name == "feasibility") {
    const auto n = spec.at("n").get<gppa::Index>();
    return gppa::build_feasibility(build_set(spec.at("set_a")), build_set(spec.at("set_b")), n);
  }
  if (name == "example-4-3") {
    const double alpha = spec.contains("alpha") ? spec.at("alpha").get<double>() : 0.25;
    return gppa::example_4_3_fixture(alpha).problem;
  }
  if (name == "counterexample-1d") {
    return gppa::counterexample_1d();
  }
  throw std::runtime_error("unknown gallery problem '" + name +
                           "' (expected trs, feasibility, example-4-3 or counterexample-1d)");
}

gppa::SolverConfig parse_solver_config(const json& cfg, const gppa::Problem& problem,
                                       bool record_points) {
  gppa::SolverConfig sc;
  sc.record_full_points = record_points;
  if (cfg.contains("epsilon")) sc.epsilon = cfg.at("epsilon").get<double>();
  if (cfg.contains("max_iters")) sc.max_iters = cfg.at("max_iters").get<std::int64_t>();
  if (cfg.contains("g1_convex_stepsize")) {
    sc.g1_convex_stepsize = cfg.at("g1_convex_stepsize").get<bool>();
  }
  if (cfg.contains("descent_tolerance") && !cfg.at("descent_tolerance").is_null()) {
    sc.descent_tolerance = cfg.at("descent_tolerance").get<double>();
  }
  if (cfg.contains("relative_stopping")) {
    sc.relative_stopping = cfg.at("relative_stopping").get<bool>();
  }
  if (cfg.contains("t") && !cfg.at("t").is_null()) {
    sc.t = cfg.at("t").get<double>();
  } else {
    const double L = problem.g2.lipschitz_L;
    const bool convex_mode = sc.g1_convex_stepsize && problem.g1.is_convex;
    sc.t = L > 0.0 ? (convex_mode ? 0.75 * L : 1.5 * L) : 1.0;
  }
  return sc;
}

gppa::Vector resolve_x0(const json& spec, const gppa::Problem& problem, double t) {
  if (spec.is_array()) {
    const gppa::Vector x0 = to_vector(spec, "x0");
    gppa::check_dimension(x0, problem.dim, "x0");
    if (!gppa::in_domain(problem, x0)) {
      throw std::runtime_error("x0 is not in dom g1; use the \"zero\" or "
                               "\"random:<seed>\" presets to pull a start into the domain");
    }
    return x0;
  }
  const std::string preset = spec.get<std::string>();
  gppa::Vector raw;
  if (preset == "zero") {
    raw = gppa::Vector::Zero(problem.dim);
  } else if (preset.rfind("random:", 0) == 0) {
    const auto seed = static_cast<std::uint64_t>(std::stoull(preset.substr(7)));
    gppa::SplitMix64 rng(seed);
    raw = rng.uniform_vector(problem.dim, -1.0, 1.0);
  } else {
    throw std::runtime_error("x0 must be an array, \"zero\" or \"random:<seed>\"");
  }
  // presets are pulled into dom g1 through the prox
  return problem.g1.prox(raw, t);
}

struct RunOutcome {
  gppa::SolveStatus status = gppa::SolveStatus::oracle_error;
  json summary;
  std::string problem_name;
};

int status_exit_code(gppa::SolveStatus status) {
  switch (status) {
    case gppa::SolveStatus::converged: return 0;
    case gppa::SolveStatus::max_iters: return 2;
    case gppa::SolveStatus::descent_violation: return 3;
    case gppa::SolveStatus::oracle_error: return 1;
  }
  return 1;
}

// Runs one config (already loaded); writes its outputs. Throws on config or
// oracle construction errors.
RunOutcome execute_run(const json& cfg, const fs::path& base_dir) {
  const gppa::Problem problem = build_problem(cfg.at("problem"));

  const json outputs = cfg.contains("outputs") ? cfg.at("outputs") : json::object();
  const bool record_points =
      outputs.contains("record_points") && outputs.at("record_points").get<bool>();
  const json solver_cfg = cfg.contains("solver") ? cfg.at("solver") : json::object();
  const gppa::SolverConfig sc = parse_solver_config(solver_cfg, problem, record_points);
  gppa::validate_config(problem, sc);

  const json x0_spec = cfg.contains("x0") ? cfg.at("x0") : json("zero");
  const gppa::Vector x0 = resolve_x0(x0_spec, problem, sc.t);

  if (log_enabled()) {
    std::cerr << "[gppa] solving " << problem.name << " (n=" << problem.dim
              << ", t=" << sc.t << ", L=" << problem.g2.lipschitz_L
              << ", eps=" << sc.epsilon << ")\n";
  }

  const gppa::Trace trace = gppa::run_gppa(problem, x0, sc);
  const gppa::RateReport rate = gppa::classify_rate(trace);

  double final_residual = 0.0;
  if (trace.status == gppa::SolveStatus::converged ||
      trace.status == gppa::SolveStatus::max_iters) {
    final_residual = gppa::criticality_residual(problem, trace.final_x, sc.t);
  }

  RunOutcome out;
  out.status = trace.status;
  out.problem_name = problem.name;
  out.summary["problem"] = problem.name;
  out.summary["dim"] = problem.dim;
  out.summary["status"] = gppa::to_string(trace.status);
  out.summary["iterations"] = trace.records.size();
  if (trace.records.empty()) {
    out.summary["final_f"] = nullptr;
  } else {
    const gppa::ExtReal ff = gppa::evaluate_objective(problem, trace.final_x);
    out.summary["final_f"] = ff.is_finite() ? json(ff.value()) : json(nullptr);
  }
  out.summary["final_step_norm"] =
      trace.records.empty() ? 0.0 : trace.records.back().step_norm;
  out.summary["final_residual"] = final_residual;
  out.summary["final_x"] = from_vector(trace.final_x);
  out.summary["x0"] = from_vector(x0);
  out.summary["lipschitz_L"] = problem.g2.lipschitz_L;
  out.summary["config"] = gppa::to_json(trace.config_echo);
  out.summary["rate"] = gppa::to_json(rate);
  if (!trace.message.empty()) out.summary["message"] = trace.message;

  if (outputs.contains("trace") && !outputs.at("trace").is_null()) {
    const fs::path trace_path = base_dir / outputs.at("trace").get<std::string>();
    gppa::write_trace_csv_file(trace, trace_path.string());
  }
  if (outputs.contains("report") && !outputs.at("report").is_null()) {
    const fs::path report_path = base_dir / outputs.at("report").get<std::string>();
    std::ofstream rep(report_path, std::ios::binary);
    if (!rep) throw std::runtime_error("cannot open report file: " + report_path.string());
    rep << out.summary.dump(2) << '\n';
  }
  return out;
}

int cmd_solve(const std::string& config_path) {
  try {
    const fs::path path(config_path);
    const json cfg = load_json(path);
    const RunOutcome out = execute_run(cfg, path.has_parent_path() ? path.parent_path() : ".");
    std::cout << "problem=" << out.problem_name
              << " status=" << out.summary["status"].get<std::string>()
              << " iterations=" << out.summary["iterations"]
              << " final_f=" << out.summary["final_f"]
              << " final_residual=" << out.summary["final_residual"]
              << " regime=" << out.summary["rate"]["regime"].get<std::string>() << '\n';
    if (out.status != gppa::SolveStatus::converged) {
      std::cerr << "gppa solve: " << gppa::to_string(out.status);
      if (out.summary.contains("message")) {
        std::cerr << ": " << out.summary["message"].get<std::string>();
      }
      std::cerr << '\n';
    }
    return status_exit_code(out.status);
  } catch (const std::exception& e) {
    std::cerr << "gppa solve: error: " << e.what() << '\n';
    return 1;
  }
}

int cmd_bench(const std::string& suite_path) {
  json suite;
  fs::path base;
  try {
    const fs::path path(suite_path);
    suite = load_json(path);
    base = path.has_parent_path() ? path.parent_path() : ".";
  } catch (const std::exception& e) {
    std::cerr << "gppa bench: error: " << e.what() << '\n';
    return 1;
  }

  std::string table = "problem,status,iterations,final_f,final_residual,regime,rate\n";
  bool all_ok = true;
  if (!suite.contains("runs") || !suite.at("runs").is_array() || suite.at("runs").empty()) {
    std::cerr << "gppa bench: error: suite must list runs\n";
    return 1;
  }
  for (const auto& entry : suite.at("runs")) {
    json cfg;
    std::string label = "<inline>";
    try {
      if (entry.is_string()) {
        const fs::path p = base / entry.get<std::string>();
        label = entry.get<std::string>();
        cfg = load_json(p);
      } else {
        cfg = entry;
      }
      const RunOutcome out = execute_run(cfg, base);
      const json& rate = out.summary["rate"];
      std::string rate_value;
      if (!rate["q"].is_null()) {
        rate_value = gppa::format_double(rate["q"].get<double>());
      } else if (!rate["exponent"].is_null()) {
        rate_value = gppa::format_double(rate["exponent"].get<double>());
      }
      table += out.problem_name;
      table += ',';
      table += out.summary["status"].get<std::string>();
      table += ',' + std::to_string(out.summary["iterations"].get<std::int64_t>());
      table += ',' + (out.summary["final_f"].is_null()
                          ? std::string("nan")
                          : gppa::format_double(out.summary["final_f"].get<double>()));
      table += ',' + gppa::format_double(out.summary["final_residual"].get<double>());
      table += ',' + rate["regime"].get<std::string>();
      table += ',' + rate_value + '\n';
      if (out.status != gppa::SolveStatus::converged) all_ok = false;
    } catch (const std::exception& e) {
      table += label + ",error,0,nan,nan,inconclusive,\n";
      std::cerr << "gppa bench: run '" << label << "' failed: " << e.what() << '\n';
      all_ok = false;
    }
  }

  std::cout << table;
  if (suite.contains("output") && !suite.at("output").is_null()) {
    const fs::path out_path = base / suite.at("output").get<std::string>();
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "gppa bench: cannot open output file " << out_path << '\n';
      return 1;
    }
    out << table;
  }
  return all_ok ? 0 : 1;
}

int cmd_verify(const std::string& trace_path, double t, double L, bool convex_g1,
               std::optional<double> tolerance) {
  try {
    const gppa::ParsedTrace parsed = gppa::read_trace_csv_file(trace_path);
    const gppa::DescentReport report =
        gppa::verify_descent_report(parsed.records, t, L, convex_g1, tolerance);
    std::cout << "records=" << parsed.records.size() << " checked=" << report.gaps.size()
              << " factor=" << gppa::format_double(report.factor)
              << " tolerance=" << gppa::format_double(report.tolerance)
              << " min_gap=" << gppa::format_double(report.min_gap)
              << " violations=" << report.violations << '\n';
    return report.violations == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "gppa verify: error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proximal-point solver for objectives f = g1 + g2 - h"};
  app.require_subcommand(1);

  std::string solve_config;
  CLI::App* solve = app.add_subcommand("solve", "run one problem from a config file");
  solve->add_option("config", solve_config, "JSON run config")->required();

  std::string suite_path;
  CLI::App* bench = app.add_subcommand("bench", "run a suite of configs and tabulate");
  bench->add_option("suite", suite_path, "JSON suite file")->required();

  std::string trace_path;
  double verify_t = 0.0, verify_L = 0.0;
  bool verify_convex = false;
  double verify_tol = -1.0;
  CLI::App* verify = app.add_subcommand("verify", "re-check descent on a stored trace");
  verify->add_option("trace", trace_path, "trace CSV file")->required();
  verify->add_option("--t", verify_t, "stepsize used for the run")->required();
  verify->add_option("--L", verify_L, "Lipschitz constant of grad g2")->required();
  verify->add_flag("--convex-g1", verify_convex, "use the strengthened factor t - L/2");
  verify->add_option("--tolerance", verify_tol,
                     "violation slack (default 1e-10 * (1 + |f_0|))");

  CLI11_PARSE(app, argc, argv);

  if (solve->parsed()) return cmd_solve(solve_config);
  if (bench->parsed()) return cmd_bench(suite_path);
  if (verify->parsed()) {
    std::optional<double> tol;
    if (verify->count("--tolerance") > 0) tol = verify_tol;
    return cmd_verify(trace_path, verify_t, verify_L, verify_convex, tol);
  }
  return 1;
}
