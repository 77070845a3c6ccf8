#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "gppa/diagnostics.hpp"
#include "gppa/eigenvalue.hpp"
#include "gppa/gallery.hpp"
#include "gppa/sets.hpp"
#include "gppa/solver.hpp"
#include "gppa/trace_io.hpp"

namespace py = pybind11;
using namespace gppa;

namespace {

double ext_to_double(const ExtReal& v) {
  return v.is_finite() ? v.value() : std::numeric_limits<double>::infinity();
}

Interval to_interval(std::pair<double, double> p) { return Interval{p.first, p.second}; }

Problem make_problem(Index dim, std::string name,
                     std::function<double(const Vector&)> g1_evaluate,
                     std::function<Vector(const Vector&, double)> g1_prox,
                     std::function<double(const Vector&)> g2_evaluate,
                     std::function<Vector(const Vector&)> g2_gradient, double lipschitz_L,
                     std::function<double(const Vector&)> h_evaluate,
                     std::function<Vector(const Vector&)> h_subgradient, bool g1_convex,
                     std::optional<std::function<bool(const Vector&)>> g1_domain,
                     std::optional<double> h_lipschitz_grad) {
  Problem p;
  p.dim = dim;
  p.name = std::move(name);
  p.g1.evaluate = [f = std::move(g1_evaluate)](const Vector& x) {
    const double v = f(x);
    return std::isinf(v) ? ExtReal::infinity() : ExtReal(v);
  };
  p.g1.prox = std::move(g1_prox);
  p.g1.is_convex = g1_convex;
  if (g1_domain) p.g1.domain_hint = std::move(*g1_domain);
  p.g2.evaluate = std::move(g2_evaluate);
  p.g2.gradient = std::move(g2_gradient);
  p.g2.lipschitz_L = lipschitz_L;
  p.h.evaluate = std::move(h_evaluate);
  p.h.subgradient = std::move(h_subgradient);
  p.h.lipschitz_grad = h_lipschitz_grad;
  return p;
}

}  // namespace

PYBIND11_MODULE(_gppa, m) {
  m.doc() = "Proximal-point solver for objectives f = g1 + g2 - h";

  py::enum_<SolveStatus>(m, "SolveStatus")
      .value("converged", SolveStatus::converged)
      .value("max_iters", SolveStatus::max_iters)
      .value("descent_violation", SolveStatus::descent_violation)
      .value("oracle_error", SolveStatus::oracle_error);

  py::enum_<RateRegime>(m, "RateRegime")
      .value("finite", RateRegime::finite)
      .value("linear", RateRegime::linear)
      .value("sublinear", RateRegime::sublinear)
      .value("inconclusive", RateRegime::inconclusive);

  py::enum_<Criticality1D>(m, "Criticality1D")
      .value("stationary", Criticality1D::stationary)
      .value("critical_not_stationary", Criticality1D::critical_not_stationary)
      .value("not_critical", Criticality1D::not_critical);

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("t", &SolverConfig::t)
      .def_readwrite("epsilon", &SolverConfig::epsilon)
      .def_readwrite("max_iters", &SolverConfig::max_iters)
      .def_readwrite("g1_convex_stepsize", &SolverConfig::g1_convex_stepsize)
      .def_readwrite("descent_tolerance", &SolverConfig::descent_tolerance)
      .def_readwrite("record_full_points", &SolverConfig::record_full_points)
      .def_readwrite("relative_stopping", &SolverConfig::relative_stopping);

  py::class_<IterationRecord>(m, "IterationRecord")
      .def_readonly("k", &IterationRecord::k)
      .def_readonly("f_value", &IterationRecord::f_value)
      .def_readonly("step_norm", &IterationRecord::step_norm)
      .def_readonly("descent_gap", &IterationRecord::descent_gap)
      .def_readonly("criticality_residual", &IterationRecord::criticality_residual)
      .def_readonly("x", &IterationRecord::x);

  py::class_<Trace>(m, "Trace")
      .def_readonly("records", &Trace::records)
      .def_readonly("final_x", &Trace::final_x)
      .def_readonly("status", &Trace::status)
      .def_readonly("config_echo", &Trace::config_echo)
      .def_readonly("problem_name", &Trace::problem_name)
      .def_readonly("message", &Trace::message)
      .def("to_csv", [](const Trace& t) {
        std::ostringstream out;
        write_trace_csv(t, out);
        return out.str();
      });

  py::class_<SetOracle>(m, "SetOracle")
      .def("project", [](const SetOracle& s, const Vector& x) { return s.project(x); })
      .def("contains", [](const SetOracle& s, const Vector& x) { return s.contains(x); })
      .def_readonly("is_convex", &SetOracle::is_convex)
      .def_readonly("name", &SetOracle::name);

  py::class_<Problem>(m, "Problem")
      .def_readonly("name", &Problem::name)
      .def_readonly("dim", &Problem::dim);

  py::class_<TrustRegionInstance>(m, "TrustRegionInstance")
      .def_readonly("A", &TrustRegionInstance::A)
      .def_readonly("b", &TrustRegionInstance::b)
      .def_readonly("r", &TrustRegionInstance::r)
      .def_readonly("rho", &TrustRegionInstance::rho)
      .def_readonly("lipschitz_h", &TrustRegionInstance::lipschitz_h)
      .def("quadratic", &TrustRegionInstance::quadratic);

  py::class_<FeasibilityInstance>(m, "FeasibilityInstance")
      .def_readonly("set_A", &FeasibilityInstance::set_A)
      .def_readonly("set_B", &FeasibilityInstance::set_B)
      .def_readonly("dim", &FeasibilityInstance::dim);

  py::class_<Example43>(m, "Example43")
      .def_readonly("problem", &Example43::problem)
      .def_readonly("instance", &Example43::instance)
      .def_readonly("x_bar", &Example43::x_bar);

  py::class_<RateReport>(m, "RateReport")
      .def_readonly("regime", &RateReport::regime)
      .def_readonly("q", &RateReport::q)
      .def_readonly("exponent", &RateReport::exponent)
      .def_readonly("theta_hat", &RateReport::theta_hat)
      .def_readonly("fit_r2", &RateReport::fit_r2)
      .def_readonly("tail_start", &RateReport::tail_start)
      .def_readonly("note", &RateReport::note);

  py::class_<DescentReport>(m, "DescentReport")
      .def_readonly("gaps", &DescentReport::gaps)
      .def_readonly("min_gap", &DescentReport::min_gap)
      .def_readonly("violations", &DescentReport::violations)
      .def_readonly("tolerance", &DescentReport::tolerance)
      .def_readonly("factor", &DescentReport::factor);

  py::class_<BoundednessReport>(m, "BoundednessReport")
      .def_readonly("max_norm", &BoundednessReport::max_norm)
      .def_readonly("threshold", &BoundednessReport::threshold)
      .def_readonly("flagged", &BoundednessReport::flagged);

  // core model
  m.def("evaluate_objective",
        [](const Problem& p, const Vector& x) { return ext_to_double(evaluate_objective(p, x)); },
        py::arg("problem"), py::arg("x"),
        "f(x) = g1(x) + g2(x) - h(x); returns inf outside dom g1");
  m.def("in_domain", &in_domain, py::arg("problem"), py::arg("x"));
  m.def("make_problem", &make_problem, py::arg("dim"), py::arg("name"),
        py::arg("g1_evaluate"), py::arg("g1_prox"), py::arg("g2_evaluate"),
        py::arg("g2_gradient"), py::arg("lipschitz_L"), py::arg("h_evaluate"),
        py::arg("h_subgradient"), py::arg("g1_convex") = false,
        py::arg("g1_domain") = py::none(), py::arg("h_lipschitz_grad") = py::none(),
        "Assemble a problem from plain callables; g1_evaluate may return inf");
  m.def("estimate_symmetric_max_eigenvalue", &estimate_symmetric_max_eigenvalue,
        py::arg("A"), py::arg("tol"), py::arg("max_iters") = 200000);

  // prox toolkit
  m.def("project_ball", &project_ball, py::arg("x"), py::arg("r"));
  m.def("project_halfspace", &project_halfspace, py::arg("x"), py::arg("a"), py::arg("beta"));
  m.def("project_box", &project_box, py::arg("x"), py::arg("lo"), py::arg("hi"));
  m.def("project_union", &project_union, py::arg("pieces"), py::arg("x"));
  m.def("project_parabola_region", &project_parabola_region, py::arg("x"), py::arg("alpha"));
  m.def("soft_threshold", &soft_threshold, py::arg("x"), py::arg("c"), py::arg("t"));
  m.def("prox_of_indicator", &prox_of_indicator, py::arg("set"), py::arg("z"), py::arg("t"));
  m.def("ball_set", &ball_set, py::arg("r"), py::arg("center") = Vector());
  m.def("halfspace_set", &halfspace_set, py::arg("a"), py::arg("beta"),
        py::arg("name") = "halfspace");
  m.def("box_set", &box_set, py::arg("lo"), py::arg("hi"));
  m.def("parabola_region_set", &parabola_region_set, py::arg("alpha"));
  m.def("singleton_set", &singleton_set, py::arg("p"));
  m.def("union_set", &union_set, py::arg("pieces"), py::arg("name") = "union");
  m.def("distance_to_set", &distance_to_set, py::arg("set"), py::arg("x"));

  // solver
  m.def("gppa_step",
        [](const Problem& p, const Vector& x, double t) {
          const GppaStep s = gppa_step(p, x, t);
          return py::make_tuple(s.x_next, s.y, s.step_norm);
        },
        py::arg("problem"), py::arg("x"), py::arg("t"),
        "One iteration; returns (x_next, y, step_norm)");
  m.def("run_gppa", &run_gppa, py::arg("problem"), py::arg("x0"), py::arg("config"));
  m.def("criticality_residual", &criticality_residual, py::arg("problem"), py::arg("x"),
        py::arg("t"));
  m.def("stepsize_lower_bound", &stepsize_lower_bound, py::arg("problem"), py::arg("config"));
  m.def("validate_config", &validate_config, py::arg("problem"), py::arg("config"));
  m.def("check_criticality_1d",
        [](std::pair<double, double> dg1, double grad_g2, std::pair<double, double> dh) {
          return check_criticality_1d(to_interval(dg1), grad_g2, to_interval(dh));
        },
        py::arg("dg1"), py::arg("grad_g2"), py::arg("dh"),
        "Exact 1d classification from interval subdifferentials");

  // gallery
  m.def("make_trust_region_instance", &make_trust_region_instance, py::arg("A"), py::arg("b"),
        py::arg("r"), py::arg("rho") = py::none(), py::arg("eig_tol") = 1e-9);
  m.def("build_trust_region",
        py::overload_cast<const TrustRegionInstance&>(&build_trust_region),
        py::arg("instance"));
  m.def("build_trust_region",
        py::overload_cast<Matrix, Vector, double, std::optional<double>>(&build_trust_region),
        py::arg("A"), py::arg("b"), py::arg("r"), py::arg("rho") = py::none());
  m.def("trs_closed_form_step", &trs_closed_form_step, py::arg("instance"), py::arg("x"),
        py::arg("t"));
  m.def("trs_brute_force",
        [](const TrustRegionInstance& inst, int grid) {
          const BruteForceResult r = trs_brute_force(inst, grid);
          return py::make_tuple(r.x, r.f);
        },
        py::arg("instance"), py::arg("grid_points_per_axis"),
        "Desk-scale grid oracle; returns (x, f)");
  m.def("build_feasibility", &build_feasibility, py::arg("set_a"), py::arg("set_b"),
        py::arg("dim"));
  m.def("example_4_3_fixture", &example_4_3_fixture, py::arg("alpha"));
  m.def("counterexample_1d", &counterexample_1d);

  // diagnostics
  m.def("classify_rate", &classify_rate, py::arg("trace"));
  m.def("verify_descent_report", &verify_descent_report, py::arg("records"), py::arg("t"),
        py::arg("L"), py::arg("convex_g1") = false, py::arg("tolerance") = py::none());
  m.def("boundedness_monitor", &boundedness_monitor, py::arg("trace"),
        py::arg("multiple") = 1e6);
}
