#ifndef KINEX_EXPERIMENTS_HPP
#define KINEX_EXPERIMENTS_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "kinex/config.hpp"

namespace kinex {

inline constexpr std::string_view kVersion = "kinex 0.1.0";

// Files written by a runner, in emission order with manifest.json last.
// Every run ends with a manifest listing each output file and its
// checksum; a failed run leaves no manifest behind.
struct ExperimentOutput {
  std::filesystem::path dir;
  std::vector<std::string> files;
};

// Simulates the configured model, samples per-agent wealth (final state,
// or pooled post-burn-in snapshots when time_averaged is set) and writes
// wealth_samples.csv, wealth_ccdf.csv, wealth_hist_linear.csv,
// wealth_hist_log.csv, fits.json and manifest.json. Fit failures are
// recorded inside fits.json instead of aborting the run.
ExperimentOutput run_wealth_experiment(const ExperimentConfig& cfg);

// Buyer-model price distribution over time: one price_hist_t<sweep>.csv
// per configured snapshot sweep. The snapshot list must be nonempty.
ExperimentOutput run_price_evolution(const ExperimentConfig& cfg);

// Independent simulation per goods:money ratio (one rng stream per list
// position), summarized into demand_curve.csv ordered by ratio. Needs at
// least two ratios. Runs legs concurrently when cfg.parallel is set;
// outputs are identical either way.
ExperimentOutput run_demand_sweep(const ExperimentConfig& cfg);

// Side-by-side stationary-distribution diagnostics for the buyer, dy and
// cc models at matched size, mean money and sweep count, written to
// comparison.csv (one row per model, matched seeds, streams 0/1/2).
ExperimentOutput run_comparison(const ExperimentConfig& cfg);

// Re-runs the fit pipeline on a previously emitted wealth_samples.csv,
// writing fits.json and manifest.json into cfg.out_dir.
ExperimentOutput run_analyze(const ExperimentConfig& cfg,
                             const std::filesystem::path& samples_csv);

// Snapshot sweeps used by the price-evolution preset when none are
// configured: 1-2-5 spaced values up to and including n_sweeps, starting
// at 0.
std::vector<std::uint64_t> default_price_snapshots(std::uint64_t n_sweeps);

}  // namespace kinex

#endif  // KINEX_EXPERIMENTS_HPP
