#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "visharp/oracle.hpp"
#include "visharp/runner.hpp"

namespace py = pybind11;
using namespace visharp;

PYBIND11_MODULE(_visharp, m) {
  m.doc() = "Sharp-penalty fixed-point solver for monotone variational "
            "inequalities";

  py::register_exception<Error>(m, "VisharpError");

  py::class_<ConvexSet>(m, "ConvexSet")
      .def_static("ball", &ConvexSet::ball, py::arg("center"),
                  py::arg("radius"))
      .def_static("box", &ConvexSet::box, py::arg("lower"), py::arg("upper"))
      .def_property_readonly("dim", &ConvexSet::dim);
  m.def("project",
        [](const ConvexSet& s, const Vector& x) { return project(s, x); });
  m.def("distance",
        [](const ConvexSet& s, const Vector& x) { return distance(s, x); });
  m.def("contains",
        [](const ConvexSet& s, const Vector& x, double tol) {
          return contains(s, x, tol);
        },
        py::arg("set"), py::arg("x"), py::arg("tol") = 0.0);
  m.def("minkowski_gauge",
        [](const ConvexSet& s, const Vector& x, const Vector& c) {
          return minkowski_gauge(s, x, c);
        });
  m.def("expand", [](const ConvexSet& s, double eps) { return expand(s, eps); });

  py::enum_<PenaltyVariant>(m, "PenaltyVariant")
      .value("Projection", PenaltyVariant::Projection)
      .value("Subgradient", PenaltyVariant::Subgradient)
      .value("Minkowski", PenaltyVariant::Minkowski);
  py::enum_<PenaltyZone>(m, "PenaltyZone")
      .value("Inside", PenaltyZone::Inside)
      .value("Shell", PenaltyZone::Shell)
      .value("Outside", PenaltyZone::Outside);
  py::class_<PenaltyMethod>(m, "PenaltyMethod")
      .def(py::init([](PenaltyVariant v, double eps) {
             return PenaltyMethod{v, eps, {}};
           }),
           py::arg("variant") = PenaltyVariant::Projection,
           py::arg("epsilon") = 0.1)
      .def_readwrite("variant", &PenaltyMethod::variant)
      .def_readwrite("epsilon", &PenaltyMethod::epsilon);
  py::class_<PenaltyValue>(m, "PenaltyValue")
      .def_readonly("direction", &PenaltyValue::direction)
      .def_readonly("zone", &PenaltyValue::zone)
      .def_readonly("strong", &PenaltyValue::strong);
  m.def("sharp_penalty", &sharp_penalty);
  m.def("polar_cone_element", &polar_cone_element);

  py::class_<ViOperator>(m, "ViOperator")
      .def(py::init<>())
      .def_readwrite("eval", &ViOperator::eval)
      .def_readwrite("dim", &ViOperator::dim)
      .def_readwrite("monotone", &ViOperator::monotone)
      .def_readwrite("rho_f", &ViOperator::rho_f)
      .def_readwrite("known_solution", &ViOperator::known_solution)
      .def_readwrite("name", &ViOperator::name)
      .def("__call__", &ViOperator::operator());
  py::class_<Problem>(m, "Problem")
      .def(py::init<ViOperator, ConvexSet>())
      .def_readwrite("op", &Problem::op)
      .def_readonly("set", &Problem::set);
  m.def("builtin_problem", &builtin_problem);
  m.def("builtin_problem_names",
        [] { return builtin_problem_names(); });
  m.def("lambda_bound", &lambda_bound);
  m.def("estimate_operator_bound", &estimate_operator_bound, py::arg("op"),
        py::arg("radius"), py::arg("samples"), py::arg("safety") = 1.5,
        py::arg("seed") = 4242);

  py::enum_<ScheduleKind>(m, "ScheduleKind")
      .value("Harmonic", ScheduleKind::Harmonic)
      .value("Geometric", ScheduleKind::Geometric)
      .value("AdaptiveLeastNorm", ScheduleKind::AdaptiveLeastNorm);
  py::class_<StepSchedule>(m, "StepSchedule")
      .def(py::init<>())
      .def_readwrite("kind", &StepSchedule::kind)
      .def_readwrite("theta0", &StepSchedule::theta0)
      .def_readwrite("power", &StepSchedule::power)
      .def_readwrite("ratio", &StepSchedule::ratio)
      .def_readwrite("shrink", &StepSchedule::shrink)
      .def_readwrite("window", &StepSchedule::window)
      .def("experimental", &StepSchedule::experimental);
  m.def("theta", &theta, py::arg("schedule"), py::arg("k"),
        py::arg("stalled_windows") = 0);

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("epsilon", &SolverConfig::epsilon)
      .def_readwrite("lambda_", &SolverConfig::lambda)
      .def_readwrite("rho_f", &SolverConfig::rho_f)
      .def_readwrite("restart_radius", &SolverConfig::restart_radius)
      .def_readwrite("schedule", &SolverConfig::schedule)
      .def_readwrite("max_iters", &SolverConfig::max_iters)
      .def_readwrite("x0", &SolverConfig::x0)
      .def_readwrite("trace_every", &SolverConfig::trace_every)
      .def_readwrite("seed", &SolverConfig::seed)
      .def_readwrite("stop_residual", &SolverConfig::stop_residual);
  py::class_<TraceRecord>(m, "TraceRecord")
      .def_readonly("k", &TraceRecord::k)
      .def_readonly("x", &TraceRecord::x)
      .def_readonly("step", &TraceRecord::step)
      .def_readonly("f_norm", &TraceRecord::f_norm)
      .def_readonly("zone", &TraceRecord::zone)
      .def_readonly("residual", &TraceRecord::residual)
      .def_readonly("merit", &TraceRecord::merit)
      .def_readonly("restarted", &TraceRecord::restarted);
  py::class_<SolveResult>(m, "SolveResult")
      .def_readonly("best", &SolveResult::best)
      .def_readonly("best_iter", &SolveResult::best_iter)
      .def_readonly("restarts", &SolveResult::restarts)
      .def_readonly("iters_run", &SolveResult::iters_run)
      .def_readonly("trace", &SolveResult::trace)
      .def_readonly("certified_eps", &SolveResult::certified_eps)
      .def_readonly("best_residual", &SolveResult::best_residual)
      .def_readonly("lambda_", &SolveResult::lambda)
      .def_readonly("lambda_eps", &SolveResult::lambda_eps)
      .def_readonly("m_hat", &SolveResult::m_hat);
  m.def("solve", &solve, py::arg("problem"), py::arg("config"),
        py::arg("method") = PenaltyMethod{});
  m.def("write_trace_csv",
        [](const std::string& path, const SolveResult& r) {
          write_trace_csv(path, r);
        });

  py::enum_<OracleKind>(m, "OracleKind")
      .value("Grid", OracleKind::Grid)
      .value("Extragradient", OracleKind::Extragradient)
      .value("Analytic", OracleKind::Analytic);
  py::class_<OracleCertificate>(m, "OracleCertificate")
      .def_readonly("x_star", &OracleCertificate::x_star)
      .def_readonly("method", &OracleCertificate::method)
      .def_readonly("residual", &OracleCertificate::residual);
  m.def("oracle_grid", &oracle_grid);
  m.def("oracle_extragradient", &oracle_extragradient, py::arg("problem"),
        py::arg("step") = 0.0, py::arg("tol") = 1e-8,
        py::arg("max_iters") = 2000000);
  m.def("verify_eps_solution", &verify_eps_solution);
}
