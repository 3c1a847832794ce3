#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "robinssn/run.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Semismooth Newton solver for bilinear Robin boundary control"};

    std::string config_path;
    std::string problem;
    int n = -1;
    double u0 = std::numeric_limits<double>::quiet_NaN();
    double tol = std::numeric_limits<double>::quiet_NaN();
    std::string out;
    bool export_vtk = false;
    bool diagnostics = false;

    app.add_option("--config", config_path, "JSON configuration file");
    app.add_option("--problem", problem, "Problem name: paper-example or manufactured");
    app.add_option("--n", n, "Mesh subdivision level (h = 1/n)");
    app.add_option("--u0", u0, "Constant initial control");
    app.add_option("--tol", tol, "Outer stopping tolerance on the relative step");
    app.add_option("--out", out, "Output directory");
    app.add_flag("--export-vtk", export_vtk, "Write the solution fields as legacy ASCII VTK");
    app.add_flag("--diagnostics", diagnostics, "Write the optimality report as JSON");

    CLI11_PARSE(app, argc, argv);

    robinssn::RunConfig config;
    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) {
                std::cerr << "error: cannot open config file '" << config_path << "'\n";
                return 2;
            }
            std::ostringstream text;
            text << in.rdbuf();
            config = robinssn::parse_config(text.str());
        }
        if (!problem.empty())
            config.problem = problem;
        if (n >= 0)
            config.n = n;
        if (u0 == u0)
            config.u0 = u0;
        if (tol == tol)
            config.ssn.tol_delta = tol;
        if (!out.empty())
            config.out = out;
        config.export_vtk |= export_vtk;
        config.diagnostics |= diagnostics;
        config.validate();

        return robinssn::run_experiment(config, std::cout);
    } catch (const robinssn::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
