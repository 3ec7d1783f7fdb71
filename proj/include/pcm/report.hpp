#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pcm/consistency.hpp"
#include "pcm/metrics.hpp"
#include "pcm/montecarlo.hpp"

namespace pcm {

inline constexpr std::string_view kToolVersion = "1.0.0";

/// Simulation config file: flat `key = value` lines, `#` comments.
/// Keys: dims, deltas, matrices_per_cell, seed, bin_width, min_bin_count,
/// cr_cap, weight_low, weight_high, max_iterations, convergence_tol, ri_table.
/// List values are comma separated; dims also accepts ranges such as `4-9`.
struct SimulationFile {
    SimulationConfig config;
    std::optional<std::filesystem::path> ri_table;  // resolved against the file's directory
};

SimulationFile parse_simulation_config(std::string_view text,
                                       const std::filesystem::path& base_dir = {});
SimulationFile load_simulation_config(const std::filesystem::path& path);

/// Canonical `key = value` echo of a config; parses back to the same config.
std::string format_simulation_config(const SimulationConfig& cfg);

/// Number formatting used by every CSV: 12 significant digits.
std::string csv_number(double v);

void write_histogram_csv(std::ostream& out, const CrHistogram& h);
/// Columns: n,bin_lower,count,mean_R_vs_invL,mean_R_vs_RL,mean_R_vs_RGM,closer_prob,suppressed
void write_bins_csv(std::ostream& out, const std::vector<BinSeries>& series, Metric m);
/// Same columns with a delta column after n.
void write_bins_by_delta_csv(std::ostream& out, const std::vector<BinSeries>& series, Metric m);
/// Columns: n,bin_lower,count,top_reversal_rate,any_reversal_rate,suppressed
void write_reversals_csv(std::ostream& out, const std::vector<BinSeries>& series);

/// One parsed row of a bins_<metric>.csv file.
struct BinsCsvRow {
    std::size_t n = 0;
    double bin_lower = 0.0;
    std::uint64_t count = 0;
    double mean_inv_left = 0.0;
    double mean_rl = 0.0;
    double mean_rgm = 0.0;
    double closer_prob = 0.0;
    bool suppressed = false;
};
std::vector<BinsCsvRow> parse_bins_csv(std::string_view text);

struct RunManifest {
    SimulationConfig config;
    RiTable ri;
    std::string ri_source;  // "default" or a path
    unsigned workers = 1;
    std::uint64_t total_matrices = 0;
    std::uint64_t failed_matrices = 0;
    std::string timestamp;
};
void write_manifest(std::ostream& out, const RunManifest& m);

/// Writes histogram.csv, bins_<metric>.csv, bins_<metric>_by_delta.csv,
/// reversals.csv and manifest.txt into `dir` (created if missing).
void write_simulation_outputs(const std::filesystem::path& dir, const SimulationResult& result,
                              const RunManifest& manifest);

/// Half-away-from-zero rounding to `decimals` places, formatted fixed.
std::string format_fixed(double v, int decimals);

std::string utc_timestamp();

}  // namespace pcm
