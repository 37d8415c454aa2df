#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wncs/config.hpp"
#include "wncs/errors.hpp"
#include "wncs/experiment.hpp"
#include "wncs/mdp.hpp"
#include "wncs/simulation.hpp"

namespace py = pybind11;
using namespace wncs;

namespace {

py::dict row_to_dict(const ResultRow& r) {
    py::dict d;
    d["policy"] = r.policy;
    d["estimator"] = r.estimator;
    d["control_mode"] = r.control_mode;
    d["axis"] = r.axis;
    d["axis_value"] = r.axis_value;
    d["seed"] = r.seed;
    d["K"] = r.K;
    d["violation_prob"] = r.metrics.violation_prob;
    d["norm_total_cost"] = r.metrics.norm_total_cost;
    d["norm_updating_cost"] = r.metrics.norm_updating_cost;
    d["norm_control_cost"] = r.metrics.norm_control_cost;
    d["mse"] = r.metrics.mse;
    return d;
}

py::list rows_to_list(const std::vector<ResultRow>& rows) {
    py::list out;
    for (const auto& r : rows) out.append(row_to_dict(r));
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Bindings for the wncs scheduling and control library";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_RuntimeError);
    py::register_exception<NonConvergenceError>(m, "NonConvergenceError", PyExc_RuntimeError);
    py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);

    py::class_<ExperimentSpec>(m, "Experiment")
        .def(py::init<>())
        .def_readwrite("slots", &ExperimentSpec::slots)
        .def_readwrite("seed", &ExperimentSpec::seed)
        .def_readwrite("replications", &ExperimentSpec::replications)
        .def_property(
            "A", [](const ExperimentSpec& s) { return s.model.A; },
            [](ExperimentSpec& s, const Matrix& A) { s.model.A = A; })
        .def_property(
            "Rw", [](const ExperimentSpec& s) { return s.model.Rw; },
            [](ExperimentSpec& s, const Matrix& Rw) { s.model.Rw = Rw; })
        .def_property(
            "c_max", [](const ExperimentSpec& s) { return s.costs.c_max; },
            [](ExperimentSpec& s, double v) { s.costs.c_max = v; })
        .def_property(
            "eps_c", [](const ExperimentSpec& s) { return s.links.eps_c; },
            [](ExperimentSpec& s, double v) { s.links.eps_c = v; })
        .def_property(
            "theta", [](const ExperimentSpec& s) { return s.control.theta; },
            [](ExperimentSpec& s, double v) { s.control.theta = v; })
        .def_property(
            "n_max", [](const ExperimentSpec& s) { return s.control.n_max; },
            [](ExperimentSpec& s, int v) { s.control.n_max = v; })
        .def_readonly("scenario", &ExperimentSpec::scenario)
        .def("validate", &ExperimentSpec::validate);

    m.def("parse_config", [](const std::string& text) { return parse_config(text); }, py::arg("text"));
    m.def("load_config", [](const std::string& path) { return load_config(path); }, py::arg("path"));

    m.def(
        "truncation",
        [](const ExperimentSpec& spec) {
            const auto t = truncation_threshold(spec.model, spec.thresholds);
            py::dict d;
            d["delta_lo"] = t.delta_lo;
            d["delta_hi"] = t.delta_hi;
            d["delta_thr"] = t.delta_thr;
            return d;
        },
        py::arg("experiment"));

    m.def(
        "solve",
        [](const ExperimentSpec& spec) {
            const auto sol = solve(spec);
            py::dict d;
            d["delta_lo"] = sol.truncation.delta_lo;
            d["delta_hi"] = sol.truncation.delta_hi;
            d["delta_thr"] = sol.truncation.delta_thr;
            d["lambda"] = sol.bisection.lambda;
            d["violation"] = sol.bisection.feasible_eval.violation;
            d["scheduling_cost"] = sol.bisection.feasible_eval.scheduling_cost;
            std::vector<int> actions;
            for (int i : sol.bisection.feasible.indices()) actions.push_back(i + 1);
            d["actions"] = actions;
            return d;
        },
        py::arg("experiment"), "Solve the scheduling problem; actions are 1 = S_a, 2 = S_b, 3 = idle per state.");

    m.def(
        "simulate",
        [](const ExperimentSpec& spec) {
            std::vector<ResultRow> rows;
            {
                py::gil_scoped_release release;
                rows = simulate(spec);
            }
            return rows_to_list(rows);
        },
        py::arg("experiment"));

    m.def(
        "table3",
        [](const ExperimentSpec& spec) {
            std::vector<ResultRow> rows;
            {
                py::gil_scoped_release release;
                rows = table3(spec);
            }
            return rows_to_list(rows);
        },
        py::arg("experiment"));

    m.def(
        "error_covariance",
        [](const ExperimentSpec& spec, int delta) { return Matrix(error_covariance(spec.model, delta)); },
        py::arg("experiment"), py::arg("delta"));
    m.def(
        "plant_covariance",
        [](const ExperimentSpec& spec, int delta) { return Matrix(plant_covariance_after_control(spec.model, delta)); },
        py::arg("experiment"), py::arg("delta"));
    m.def(
        "tarq_gap",
        [](const ExperimentSpec& spec, double eps_c, int n_max, int delta) {
            return Matrix(tarq_gap_analytic(spec.model, eps_c, n_max, delta));
        },
        py::arg("experiment"), py::arg("eps_c"), py::arg("n_max"), py::arg("delta"));
}
