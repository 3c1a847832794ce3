#ifndef ROBINSSN_CONFIG_HPP
#define ROBINSSN_CONFIG_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include "robinssn/ssn.hpp"

namespace robinssn {

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Experiment description; every field has a default so the empty JSON
/// object is a valid configuration (paper example, n = 16, u0 = 0).
struct RunConfig {
    std::string problem = "paper-example";  // or "manufactured"
    int n = 16;
    std::optional<double> nu;
    std::optional<double> alpha;
    std::optional<double> beta;
    double u0 = 0.0;
    std::optional<std::string> u0_file;  // whitespace-separated nodal values
    SsnConfig ssn;
    std::string out = "out";
    bool export_vtk = false;
    bool diagnostics = false;

    void validate() const;  // throws ConfigError
};

/// Parse a JSON object with the RunConfig fields; unknown keys are rejected
/// and every error carries the offending field name.
RunConfig parse_config(const std::string& text);

} // namespace robinssn

#endif
