#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "robinssn/diagnostics.hpp"
#include "robinssn/problems.hpp"
#include "robinssn/run.hpp"
#include "robinssn/ssn.hpp"

namespace py = pybind11;
using namespace robinssn;

namespace {

BoundaryField as_boundary(const Mesh& mesh, const Eigen::VectorXd& values) {
    if (values.size() != mesh.num_boundary_nodes())
        throw std::invalid_argument("expected one value per boundary node");
    return BoundaryField(values);
}

py::dict record_to_dict(const IterationRecord& rec) {
    py::dict d;
    d["j"] = rec.j;
    d["J"] = rec.J;
    d["delta"] = rec.delta ? py::object(py::float_(*rec.delta)) : py::object(py::none());
    d["newton"] = rec.newton;
    d["cg"] = rec.cg;
    d["n_active_alpha"] = rec.n_active_alpha;
    d["n_active_beta"] = rec.n_active_beta;
    d["n_inactive"] = rec.n_inactive;
    d["F_inf"] = rec.F_inf;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Semismooth Newton solver for bilinear Robin boundary control";

    py::class_<Mesh>(m, "Mesh")
        .def_property_readonly("num_vertices", &Mesh::num_vertices)
        .def_property_readonly("num_tets", &Mesh::num_tets)
        .def_property_readonly("num_boundary_nodes", &Mesh::num_boundary_nodes)
        .def_property_readonly("level", &Mesh::level)
        .def_property_readonly("vertices",
                               [](const Mesh& mesh) {
                                   Eigen::MatrixXd coords(mesh.num_vertices(), 3);
                                   for (Eigen::Index v = 0; v < mesh.num_vertices(); ++v)
                                       coords.row(v) =
                                           mesh.vertices()[static_cast<std::size_t>(v)].transpose();
                                   return coords;
                               })
        .def_property_readonly("boundary_nodes", [](const Mesh& mesh) {
            return std::vector<int>(mesh.boundary_nodes().begin(), mesh.boundary_nodes().end());
        });

    py::class_<ProblemSpec>(m, "ProblemSpec")
        .def_readwrite("nu", &ProblemSpec::nu)
        .def_readwrite("alpha", &ProblemSpec::alpha)
        .def_readwrite("beta", &ProblemSpec::beta);

    py::class_<SsnConfig>(m, "SsnConfig")
        .def(py::init<>())
        .def_readwrite("tol_delta", &SsnConfig::tol_delta)
        .def_readwrite("max_outer", &SsnConfig::max_outer)
        .def_readwrite("cg_tol", &SsnConfig::cg_tol)
        .def_readwrite("cg_max", &SsnConfig::cg_max)
        .def_readwrite("state_tol", &SsnConfig::state_tol)
        .def_readwrite("max_newton", &SsnConfig::max_newton);

    m.def("build_unit_cube_mesh", &build_unit_cube_mesh, py::arg("n"));
    m.def("boundary_area_weights",
          [](const Mesh& mesh) { return boundary_area_weights(mesh).values; });
    m.def("paper_example", &paper_example);
    m.def("manufactured_linear_profile", [] { return manufactured_linear_profile().spec; });
    m.def("manufactured_quadratic_profile", [] { return manufactured_quadratic_profile().spec; });

    m.def(
        "solve_state",
        [](const ProblemSpec& p, const Mesh& mesh, const Eigen::VectorXd& u) {
            const StateResult result = solve_state(p, mesh, as_boundary(mesh, u));
            return py::make_tuple(result.y.values, result.report.iterations,
                                  result.report.residual);
        },
        py::arg("problem"), py::arg("mesh"), py::arg("u"),
        "Solve the state equation; returns (y, newton_iterations, residual).");

    m.def(
        "objective_value",
        [](const ProblemSpec& p, const Mesh& mesh, const Eigen::VectorXd& u,
           const Eigen::VectorXd& y) {
            return objective_value(p, mesh, as_boundary(mesh, u), VolumeField(y));
        },
        py::arg("problem"), py::arg("mesh"), py::arg("u"), py::arg("y"));

    m.def(
        "ssn_solve",
        [](const ProblemSpec& p, const Mesh& mesh, const Eigen::VectorXd& u0,
           const SsnConfig& cfg) {
            const SsnResult result = ssn_solve(p, mesh, as_boundary(mesh, u0), cfg);
            py::list history;
            for (const auto& rec : result.history)
                history.append(record_to_dict(rec));
            py::dict out;
            out["u"] = result.u.values;
            out["history"] = history;
            out["converged"] = result.converged;
            out["failure"] = result.failure;
            return out;
        },
        py::arg("problem"), py::arg("mesh"), py::arg("u0"), py::arg("config") = SsnConfig{},
        "Run the semismooth Newton loop; returns a dict with u, history, converged.");

    m.def(
        "optimality_report",
        [](const ProblemSpec& p, const Mesh& mesh, const Eigen::VectorXd& u_values, double tau,
           int iterations) {
            const BoundaryField u = as_boundary(mesh, u_values);
            const StateResult state = solve_state(p, mesh, u);
            const LinearizedOperator op = make_linearized_operator(p, mesh, u, state.y);
            const VolumeField phi = solve_adjoint(op, p, state.y);
            const OptimalityReport rep = make_optimality_report(op, p, u, state.y, phi, tau,
                                                                iterations);
            py::dict d;
            d["F_inf"] = rep.F_inf;
            d["biactive_measure"] = rep.biactive_measure;
            d["eps_sc"] = rep.eps_sc;
            d["coercivity"] = rep.coercivity;
            d["coercivity_defined"] = rep.coercivity_defined;
            d["tau"] = rep.tau;
            return d;
        },
        py::arg("problem"), py::arg("mesh"), py::arg("u"), py::arg("tau") = 1e-6,
        py::arg("iterations") = 60);

    m.def(
        "run_experiment_json",
        [](const std::string& config_json) {
            const RunConfig config = parse_config(config_json);
            std::ostringstream log;
            const int status = run_experiment(config, log);
            return py::make_tuple(status, log.str());
        },
        py::arg("config_json"), "Drive a full experiment from a JSON configuration string.");
}
