#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "typhoid/analysis.hpp"
#include "typhoid/scenario.hpp"

namespace typhoid::cli {

/// Failure to open or write an output file.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PeakStats {
    double peak_i = 0.0;
    double peak_time = 0.0;  ///< first time index attaining the maximum
    double threshold = 0.0;  ///< resolved threshold (absolute I)
    double time_above = 0.0; ///< weeks with I above the threshold (trapezoidal)
};

/// Peak and time-above-threshold statistics of a recorded trajectory.
/// Without an explicit threshold, 10% of the trajectory's own peak I is used.
PeakStats peak_stats(const Trajectory& traj, std::optional<double> threshold = {});

/// Writes CSV `t,S,I,R,B,N` (17 significant digits) and, when requested,
/// one SVG per variable group (human compartments; bacteria).
Trajectory cmd_simulate(const ScenarioConfig& cfg, const std::string& out_path, bool svg,
                        std::ostream& diag);

/// Prints R0 (both routes), DFE with residual, local-stability verdict (or
/// the non-stationarity warning when eta1 > 0), Metzler checks, the endemic
/// equilibrium (or its absence), and R0 sensitivities; as a key-value text
/// block or JSON.
void cmd_analyze(const ScenarioConfig& cfg, bool json, std::ostream& out);

struct CompareOutcome {
    PeakStats a, b;
};

/// Runs both scenarios on a shared fixed-step grid (scenario a's solver
/// settings), writes a combined CSV (and overlay SVG), and reports peak I,
/// peak time and time-above-threshold for each.
CompareOutcome cmd_compare(const ScenarioConfig& a, const ScenarioConfig& b,
                           const std::string& out_path, bool svg,
                           std::optional<double> threshold, std::ostream& out);

/// One CSV row per swept value: R0, endemic-equilibrium components (blank
/// when absent), peak I; failures are annotated in the final column and do
/// not stop the sweep.
void cmd_sweep(const SweepSpec& spec, const std::string& out_path, std::ostream& diag);

/// CSV `t,I,B` plus an I-versus-B phase curve SVG.
Trajectory cmd_phase(const ScenarioConfig& cfg, const std::string& out_path, bool svg,
                     std::ostream& diag);

/// Full command-line surface (simulate|analyze|compare|sweep|phase).
/// `args` excludes the program name. Exit codes: 0 success, 1 parse or
/// validation error, 2 numerical or I/O failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace typhoid::cli
