#ifndef ROBINSSN_RUN_HPP
#define ROBINSSN_RUN_HPP

#include <iosfwd>
#include <vector>

#include "robinssn/config.hpp"
#include "robinssn/diagnostics.hpp"

namespace robinssn {

/// Human-readable convergence table in the style of the reference tables:
/// j, J(u_j), delta_j (two significant digits), Newton and CG counts.
void write_table(std::ostream& out, const std::vector<IterationRecord>& history);

/// Machine-readable history: header row, comma separation, LF endings,
/// numeric columns at 17 significant digits. delta is empty on the trailing
/// record.
void write_history_csv(std::ostream& out, const std::vector<IterationRecord>& history);

/// Inverse of write_history_csv; numeric columns round-trip bit exactly.
std::vector<IterationRecord> parse_history_csv(const std::string& text);

/// Drive a full experiment from a configuration: build the mesh, run the
/// solver, write the table, the CSV and the optional JSON report and VTK
/// export into the out directory. Returns the process exit status: 0 on
/// success, 1 on solver nonconvergence (outputs are still written).
/// Configuration errors throw ConfigError before anything is written.
int run_experiment(const RunConfig& config, std::ostream& log);

} // namespace robinssn

#endif
