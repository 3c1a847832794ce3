#include "robinssn/config.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

namespace robinssn {

void RunConfig::validate() const {
    if (problem != "paper-example" && problem != "manufactured")
        throw ConfigError("config: unknown problem '" + problem +
                          "' (expected \"paper-example\" or \"manufactured\")");
    if (n < 1)
        throw ConfigError("config: n must be a positive mesh level");
    if (nu && !(*nu > 0.0))
        throw ConfigError("config: nu must be positive");
    const double a = alpha.value_or(0.0);
    if (alpha && !(*alpha >= 0.0))
        throw ConfigError("config: alpha must be nonnegative");
    if (beta && !(*beta > a))
        throw ConfigError("config: beta must exceed alpha");
    if (!(ssn.tol_delta > 0.0) || !(ssn.cg_tol > 0.0) || !(ssn.state_tol > 0.0))
        throw ConfigError("config: tolerances must be positive");
    if (ssn.max_outer < 1 || ssn.cg_max < 1 || ssn.max_newton < 1)
        throw ConfigError("config: iteration budgets must be positive");
    if (out.empty())
        throw ConfigError("config: out directory must not be empty");
}

RunConfig parse_config(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config: JSON parse error: ") + e.what());
    }
    if (!j.is_object())
        throw ConfigError("config: top level must be a JSON object");

    RunConfig cfg;
    const std::set<std::string> known = {"problem", "n",        "nu",        "alpha",
                                         "beta",    "u0",       "u0_file",   "tol_delta",
                                         "max_outer", "cg_tol", "cg_max",    "state_tol",
                                         "max_newton", "out",   "export_vtk", "diagnostics"};
    for (const auto& item : j.items())
        if (!known.count(item.key()))
            throw ConfigError("config: unknown key '" + item.key() + "'");

    auto get_number = [&j](const char* key, double& target) {
        if (!j.contains(key))
            return;
        if (!j[key].is_number())
            throw ConfigError(std::string("config: field '") + key + "' must be a number");
        target = j[key].get<double>();
    };
    auto get_optional = [&j](const char* key, std::optional<double>& target) {
        if (!j.contains(key))
            return;
        if (!j[key].is_number())
            throw ConfigError(std::string("config: field '") + key + "' must be a number");
        target = j[key].get<double>();
    };
    auto get_int = [&j](const char* key, int& target) {
        if (!j.contains(key))
            return;
        if (!j[key].is_number_integer())
            throw ConfigError(std::string("config: field '") + key + "' must be an integer");
        target = j[key].get<int>();
    };
    auto get_string = [&j](const char* key, std::string& target) {
        if (!j.contains(key))
            return;
        if (!j[key].is_string())
            throw ConfigError(std::string("config: field '") + key + "' must be a string");
        target = j[key].get<std::string>();
    };
    auto get_bool = [&j](const char* key, bool& target) {
        if (!j.contains(key))
            return;
        if (!j[key].is_boolean())
            throw ConfigError(std::string("config: field '") + key + "' must be a boolean");
        target = j[key].get<bool>();
    };

    get_string("problem", cfg.problem);
    get_int("n", cfg.n);
    get_optional("nu", cfg.nu);
    get_optional("alpha", cfg.alpha);
    get_optional("beta", cfg.beta);
    get_number("u0", cfg.u0);
    if (j.contains("u0_file")) {
        std::string path;
        get_string("u0_file", path);
        cfg.u0_file = path;
    }
    get_number("tol_delta", cfg.ssn.tol_delta);
    get_int("max_outer", cfg.ssn.max_outer);
    get_number("cg_tol", cfg.ssn.cg_tol);
    get_int("cg_max", cfg.ssn.cg_max);
    get_number("state_tol", cfg.ssn.state_tol);
    get_int("max_newton", cfg.ssn.max_newton);
    get_string("out", cfg.out);
    get_bool("export_vtk", cfg.export_vtk);
    get_bool("diagnostics", cfg.diagnostics);

    cfg.validate();
    return cfg;
}

} // namespace robinssn
