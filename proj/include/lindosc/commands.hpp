#pragma once

// The four CLI verbs as library functions, so that tests can drive them
// without spawning processes. Each returns a process exit code:
//   0 success, 2 validation failure, 3 I/O failure, 4 oracle truncation
//   breach; verify returns 1 when the oracle disagrees beyond the bound.

#include <optional>
#include <string>
#include <vector>

#include "lindosc/config.hpp"

namespace lindosc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitBreach = 4;

enum class SweepAxis { coth_eps, delta, r, lambda };

std::optional<SweepAxis> sweep_axis_from_string(const std::string& name);
const char* to_string(SweepAxis axis);

struct CommandOptions {
    std::string out_dir;         ///< overrides config output.dir when nonempty
    bool header_comment = true;  ///< '#' comment lines at the top of each CSV
};

/// Runs the moment integration and writes trajectory.csv + report.txt.
int cmd_simulate(const RunConfig& config, const CommandOptions& options);

/// One closed-form metrics row per axis value; invalid combinations get a
/// "constraint-violated" status instead of aborting the sweep. Writes sweep.csv.
int cmd_sweep(const RunConfig& config, const CommandOptions& options, SweepAxis axis,
              const std::vector<double>& values);

/// Density-matrix grid at a given time (nullopt = thermal steady state).
/// Writes rho_grid.csv.
int cmd_grid(const RunConfig& config, const CommandOptions& options, std::optional<double> time);

/// Fock-basis oracle run against the Gaussian closed form. Writes verify.csv
/// and oracle_trajectory.csv; exit 0 iff the maximum |sigma| difference stays
/// within oracle.sigma_tolerance.
int cmd_verify(const RunConfig& config, const CommandOptions& options);

}  // namespace lindosc::cli
