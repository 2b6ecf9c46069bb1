#ifndef KINEX_CONFIG_HPP
#define KINEX_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace kinex {

enum class ModelKind { Buyer, Dy, Cc };

std::string_view model_name(ModelKind kind);
ModelKind model_from_name(std::string_view name);  // throws on unknown names

// Fully resolved experiment parameters. Defaults are the documented
// desk-scale setup: 1000 agents, goods and money both 1000 (a 1:1 ratio),
// prices seeded uniformly on [0.5, 1.5], seed 42.
struct ExperimentConfig {
  ModelKind model = ModelKind::Buyer;
  double lambda = 0.5;  // saving propensity, used by the cc model only
  std::size_t n_agents = 1000;
  std::int64_t total_goods = 1000;
  double total_money = 1000.0;
  double h_min = 0.5;
  double h_max = 1.5;
  std::uint64_t n_sweeps = 10000;       // 1 sweep = n_agents encounters
  std::uint64_t burn_in_sweeps = 1000;  // equilibration prefix of n_sweeps
  std::vector<std::uint64_t> snapshot_sweeps;
  std::uint64_t seed = 42;
  std::string out_dir = "out";
  std::vector<double> ratios;  // goods:money ratios for sweeps
  // When set, wealth/price samples pool every snapshot at or after the
  // burn-in instead of the final state only.
  bool time_averaged = false;
  bool parallel = true;  // run sweep/comparison legs concurrently
  // Thermal fit window; when unset a deterministic quantile rule picks it
  // from the data (see experiments).
  std::optional<double> fit_window_lo;
  std::optional<double> fit_window_hi;
  std::optional<double> tail_probe;   // default: beyond the fit window
  std::optional<double> pareto_xmin;  // default: the fit window's upper edge
  std::size_t hist_bins = 40;

  void validate() const;  // throws std::invalid_argument naming the field
  nlohmann::json to_json() const;
};

// Command-line values; unset fields keep whatever the file or the
// defaults provide. `ratio` and `goods` are alternative ways to fix the
// goods total and may not be combined within one source.
struct ConfigOverrides {
  std::optional<std::string> model;
  std::optional<double> lambda;
  std::optional<std::int64_t> n_agents;
  std::optional<std::int64_t> goods;
  std::optional<double> money;
  std::optional<double> ratio;
  std::optional<double> h_min;
  std::optional<double> h_max;
  std::optional<std::int64_t> sweeps;
  std::optional<std::int64_t> burn_in;
  std::optional<std::vector<std::uint64_t>> snapshots;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<std::vector<double>> ratios;
  std::optional<bool> time_averaged;
  std::optional<bool> parallel;
};

// Resolution order: defaults, then env_seed (KINEX_SEED), then the JSON
// file, then the flag overrides. Unknown file keys are an error listing
// them; malformed JSON reports line and column. The result is validated.
ExperimentConfig parse_config(const std::string& json_text,
                              const ConfigOverrides& overrides,
                              std::optional<std::uint64_t> env_seed = {});

// Goods total implied by a goods:money ratio at fixed money.
std::int64_t goods_for_ratio(double ratio, double total_money);

}  // namespace kinex

#endif  // KINEX_CONFIG_HPP
