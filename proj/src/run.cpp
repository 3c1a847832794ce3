#include "robinssn/run.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "robinssn/problems.hpp"
#include "robinssn/vtk.hpp"

namespace robinssn {

namespace {

std::string full_precision(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

BoundaryField load_u0(const RunConfig& config, const Mesh& mesh) {
    if (!config.u0_file)
        return BoundaryField(mesh.num_boundary_nodes(), config.u0);
    std::ifstream in(*config.u0_file);
    if (!in)
        throw ConfigError("config: cannot open u0 file '" + *config.u0_file + "'");
    std::vector<double> values;
    double v;
    while (in >> v)
        values.push_back(v);
    if (static_cast<Eigen::Index>(values.size()) != mesh.num_boundary_nodes())
        throw ConfigError("config: u0 file holds " + std::to_string(values.size()) +
                          " values, mesh has " + std::to_string(mesh.num_boundary_nodes()) +
                          " boundary nodes");
    BoundaryField u0(mesh.num_boundary_nodes());
    for (Eigen::Index s = 0; s < u0.size(); ++s)
        u0[s] = values[static_cast<std::size_t>(s)];
    return u0;
}

} // namespace

void write_table(std::ostream& out, const std::vector<IterationRecord>& history) {
    char line[160];
    std::snprintf(line, sizeof line, "%3s  %-24s  %-8s  %7s  %5s\n", "j", "J(u_j)", "delta_j",
                  "#Newton", "#CG");
    out << line;
    for (const auto& rec : history) {
        char delta[16] = "";
        if (rec.delta)
            std::snprintf(delta, sizeof delta, "%.1e", *rec.delta);
        char cg[16] = "";
        if (rec.delta)
            std::snprintf(cg, sizeof cg, "%d", rec.cg);
        std::snprintf(line, sizeof line, "%3d  %.16e  %-8s  %7d  %5s\n", rec.j, rec.J, delta,
                      rec.newton, cg);
        out << line;
    }
}

void write_history_csv(std::ostream& out, const std::vector<IterationRecord>& history) {
    out << "j,J,delta,newton,cg,n_active_alpha,n_active_beta,n_inactive,F_inf\n";
    for (const auto& rec : history) {
        out << rec.j << ',' << full_precision(rec.J) << ',';
        if (rec.delta)
            out << full_precision(*rec.delta);
        out << ',' << rec.newton << ',' << rec.cg << ',' << rec.n_active_alpha << ','
            << rec.n_active_beta << ',' << rec.n_inactive << ',' << full_precision(rec.F_inf)
            << '\n';
    }
}

std::vector<IterationRecord> parse_history_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) ||
        line != "j,J,delta,newton,cg,n_active_alpha,n_active_beta,n_inactive,F_inf")
        throw std::invalid_argument("parse_history_csv: bad header");
    std::vector<IterationRecord> history;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            cells.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos)
                break;
            start = comma + 1;
        }
        if (cells.size() != 9)
            throw std::invalid_argument("parse_history_csv: expected 9 columns");
        IterationRecord rec;
        rec.j = std::stoi(cells[0]);
        rec.J = std::stod(cells[1]);
        if (!cells[2].empty())
            rec.delta = std::stod(cells[2]);
        rec.newton = std::stoi(cells[3]);
        rec.cg = std::stoi(cells[4]);
        rec.n_active_alpha = std::stol(cells[5]);
        rec.n_active_beta = std::stol(cells[6]);
        rec.n_inactive = std::stol(cells[7]);
        rec.F_inf = std::stod(cells[8]);
        history.push_back(rec);
    }
    return history;
}

int run_experiment(const RunConfig& config, std::ostream& log) {
    config.validate();

    ProblemSpec problem =
        config.problem == "paper-example" ? paper_example() : manufactured_quadratic_profile().spec;
    if (config.nu)
        problem.nu = *config.nu;
    if (config.alpha)
        problem.alpha = *config.alpha;
    if (config.beta)
        problem.beta = *config.beta;
    problem.validate();

    const Mesh mesh = build_unit_cube_mesh(config.n);
    const BoundaryField u0 = load_u0(config, mesh);

    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(config.out, ec);
    if (ec)
        throw ConfigError("config: cannot create output directory '" + config.out + "': " +
                          ec.message());

    SsnResult result = ssn_solve(problem, mesh, u0, config.ssn);

    write_table(log, result.history);
    {
        std::ofstream table(fs::path(config.out) / "table.txt");
        write_table(table, result.history);
    }
    {
        std::ofstream csv(fs::path(config.out) / "history.csv", std::ios::binary);
        write_history_csv(csv, result.history);
    }

    if (config.diagnostics || config.export_vtk) try {
        StateResult state = solve_state(problem, mesh, result.u, nullptr, config.ssn.state_tol,
                                        config.ssn.max_newton);
        const LinearizedOperator op = make_linearized_operator(problem, mesh, result.u, state.y);
        const VolumeField phi = solve_adjoint(op, problem, state.y);

        if (config.diagnostics) {
            const OptimalityReport report =
                make_optimality_report(op, problem, result.u, state.y, phi);
            nlohmann::json j = {{"F_inf", report.F_inf},
                                {"biactive_measure", report.biactive_measure},
                                {"eps_sc", report.eps_sc},
                                {"coercivity", report.coercivity},
                                {"coercivity_defined", report.coercivity_defined},
                                {"tau", report.tau},
                                {"lanczos_iterations", report.lanczos_iterations},
                                {"converged", result.converged}};
            std::ofstream json_out(fs::path(config.out) / "report.json");
            json_out << j.dump(2) << '\n';
        }
        if (config.export_vtk) {
            write_vtk_file((fs::path(config.out) / "solution.vtk").string(), mesh,
                           {{"state", state.y},
                            {"adjoint", phi},
                            {"control", mesh.extend_by_zero(result.u)}},
                           "robinssn solution fields");
        }
    } catch (const std::exception& e) {
        log << "diagnostics/export skipped: " << e.what() << '\n';
    }

    if (!result.converged) {
        log << "solver did not converge: " << result.failure << '\n';
        return 1;
    }
    return 0;
}

} // namespace robinssn
