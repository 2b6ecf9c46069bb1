// kinex command line: simulate | sweep | compare | analyze | plot.
//
// Configuration precedence, lowest to highest: built-in defaults, the
// KINEX_SEED environment variable (seed only), the --config JSON file,
// command-line flags. Exit codes: 0 success, 1 bad arguments or
// configuration, 2 runtime or I/O failure. Progress goes to stderr so
// stdout stays clean for piping.

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kinex/config.hpp"
#include "kinex/csv.hpp"
#include "kinex/experiments.hpp"
#include "kinex/io_util.hpp"
#include "kinex/svg.hpp"

namespace {

std::optional<std::uint64_t> seed_from_env() {
  const char* text = std::getenv("KINEX_SEED");
  if (text == nullptr || *text == '\0') {
    return std::nullopt;
  }
  std::uint64_t value = 0;
  const char* end = text + std::strlen(text);
  const auto [ptr, ec] = std::from_chars(text, end, value);
  if (ec != std::errc() || ptr != end) {
    throw std::invalid_argument(
        std::string("KINEX_SEED is not an unsigned integer: ") + text);
  }
  return value;
}

// One slot per flag; presence is checked through cmd.count() after the
// parse, so unset flags never override the config file.
struct FlagValues {
  std::string config_path;
  std::uint64_t seed = 0;
  std::int64_t n_agents = 0;
  std::int64_t goods = 0;
  double money = 0.0;
  double ratio = 0.0;
  std::vector<double> ratios;
  std::string model;
  double lambda = 0.0;
  double h_min = 0.0;
  double h_max = 0.0;
  std::int64_t sweeps = 0;
  std::int64_t burn_in = 0;
  std::vector<std::uint64_t> snapshots;
  std::string out_dir;
  bool time_averaged = false;
  bool sequential = false;
};

void add_config_flags(CLI::App* cmd, FlagValues& v, bool with_ratios) {
  cmd->add_option("--config", v.config_path, "JSON config file");
  cmd->add_option("--seed", v.seed, "master seed");
  cmd->add_option("--n-agents", v.n_agents, "number of agents");
  auto* goods =
      cmd->add_option("--goods", v.goods, "total goods endowment");
  auto* ratio = cmd->add_option(
      "--ratio", v.ratio, "goods:money ratio fixing the goods endowment");
  goods->excludes(ratio);
  ratio->excludes(goods);
  cmd->add_option("--money", v.money, "total money endowment");
  cmd->add_option("--model", v.model, "buyer|dy|cc");
  cmd->add_option("--lambda", v.lambda, "saving propensity for the cc model");
  cmd->add_option("--h-min", v.h_min, "initial price support, lower edge");
  cmd->add_option("--h-max", v.h_max, "initial price support, upper edge");
  cmd->add_option("--sweeps", v.sweeps,
                  "run length in sweeps (n-agents encounters each)");
  cmd->add_option("--burn-in", v.burn_in, "equilibration sweeps");
  cmd->add_option("--snapshots", v.snapshots,
                  "snapshot sweeps, comma separated")
      ->delimiter(',');
  cmd->add_option("--out", v.out_dir, "output directory");
  cmd->add_flag("--time-averaged", v.time_averaged,
                "pool post-burn-in snapshots instead of the final state");
  cmd->add_flag("--sequential", v.sequential,
                "run sweep/comparison legs one after another");
  if (with_ratios) {
    cmd->add_option("--ratios", v.ratios,
                    "goods:money ratios for the sweep, comma separated")
        ->delimiter(',');
  }
}

bool given(const CLI::App& cmd, const std::string& name) {
  const CLI::Option* opt = cmd.get_option_no_throw(name);
  return opt != nullptr && opt->count() > 0;
}

kinex::ExperimentConfig build_config(const CLI::App& cmd,
                                     const FlagValues& v) {
  std::string text = "{}";
  if (given(cmd, "--config")) {
    if (!std::filesystem::exists(v.config_path)) {
      throw std::invalid_argument("config file does not exist: " +
                                  v.config_path);
    }
    text = kinex::read_file(v.config_path);
  }
  kinex::ConfigOverrides o;
  if (given(cmd, "--seed")) o.seed = v.seed;
  if (given(cmd, "--n-agents")) o.n_agents = v.n_agents;
  if (given(cmd, "--goods")) o.goods = v.goods;
  if (given(cmd, "--money")) o.money = v.money;
  if (given(cmd, "--ratio")) o.ratio = v.ratio;
  if (given(cmd, "--model")) o.model = v.model;
  if (given(cmd, "--lambda")) o.lambda = v.lambda;
  if (given(cmd, "--h-min")) o.h_min = v.h_min;
  if (given(cmd, "--h-max")) o.h_max = v.h_max;
  if (given(cmd, "--sweeps")) o.sweeps = v.sweeps;
  if (given(cmd, "--burn-in")) o.burn_in = v.burn_in;
  if (given(cmd, "--snapshots")) o.snapshots = v.snapshots;
  if (given(cmd, "--out")) o.out_dir = v.out_dir;
  if (given(cmd, "--ratios")) o.ratios = v.ratios;
  if (v.time_averaged) o.time_averaged = true;
  if (v.sequential) o.parallel = false;
  return kinex::parse_config(text, o, seed_from_env());
}

void report(const kinex::ExperimentOutput& out) {
  std::cerr << "wrote " << out.files.size() << " files to "
            << out.dir.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic kinetic-exchange market simulator"};
  app.require_subcommand(1);
  FlagValues v;

  CLI::App* simulate = app.add_subcommand(
      "simulate", "run one market and write wealth or price outputs");
  std::string experiment = "wealth";
  simulate->add_option("--experiment", experiment,
                       "wealth (distribution outputs) or prices "
                       "(per-snapshot price histograms)")
      ->capture_default_str();
  CLI::App* sweep = app.add_subcommand(
      "sweep", "demand curve across goods:money ratios");
  CLI::App* compare = app.add_subcommand(
      "compare", "buyer vs dy vs cc stationary diagnostics");
  CLI::App* analyze =
      app.add_subcommand("analyze", "re-fit an existing wealth sample file");
  std::string analyze_in;
  analyze->add_option("--in", analyze_in, "wealth_samples.csv to re-fit")
      ->required();

  add_config_flags(simulate, v, false);
  add_config_flags(sweep, v, true);
  add_config_flags(compare, v, false);
  add_config_flags(analyze, v, false);

  CLI::App* plot = app.add_subcommand("plot", "render a CSV as an SVG plot");
  std::string plot_in;
  std::string plot_x;
  std::string plot_y;
  std::string plot_out;
  std::string plot_title;
  bool log_x = false;
  bool log_y = false;
  bool scatter = false;
  plot->add_option("--in", plot_in, "input CSV file")->required();
  plot->add_option("--x", plot_x, "column for the x axis")->required();
  plot->add_option("--y", plot_y, "column for the y axis")->required();
  plot->add_option("--out", plot_out,
                   "output SVG path (default: input with .svg)");
  plot->add_option("--title", plot_title, "plot title");
  plot->add_flag("--logx", log_x, "logarithmic x axis");
  plot->add_flag("--logy", log_y, "logarithmic y axis");
  plot->add_flag("--scatter", scatter, "circles instead of a line");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (simulate->parsed()) {
      kinex::ExperimentConfig cfg = build_config(*simulate, v);
      if (experiment == "wealth") {
        report(kinex::run_wealth_experiment(cfg));
      } else if (experiment == "prices") {
        if (cfg.snapshot_sweeps.empty()) {
          cfg.snapshot_sweeps = kinex::default_price_snapshots(cfg.n_sweeps);
        }
        report(kinex::run_price_evolution(cfg));
      } else {
        throw std::invalid_argument("unknown experiment: " + experiment +
                                    " (expected wealth or prices)");
      }
    } else if (sweep->parsed()) {
      report(kinex::run_demand_sweep(build_config(*sweep, v)));
    } else if (compare->parsed()) {
      report(kinex::run_comparison(build_config(*compare, v)));
    } else if (analyze->parsed()) {
      if (!std::filesystem::exists(analyze_in)) {
        throw std::invalid_argument("input file does not exist: " +
                                    analyze_in);
      }
      report(kinex::run_analyze(build_config(*analyze, v), analyze_in));
    } else if (plot->parsed()) {
      if (!std::filesystem::exists(plot_in)) {
        throw std::invalid_argument("input file does not exist: " + plot_in);
      }
      const kinex::CsvTable table = kinex::parse_csv(kinex::read_file(plot_in));
      kinex::PlotSpec spec;
      spec.x_column = plot_x;
      spec.y_column = plot_y;
      spec.x_scale = log_x ? kinex::Scale::Log : kinex::Scale::Linear;
      spec.y_scale = log_y ? kinex::Scale::Log : kinex::Scale::Linear;
      spec.kind = scatter ? kinex::PlotKind::Scatter : kinex::PlotKind::Line;
      spec.title = plot_title;
      const std::filesystem::path out_path =
          plot_out.empty()
              ? std::filesystem::path(plot_in).replace_extension(".svg")
              : std::filesystem::path(plot_out);
      kinex::write_file(out_path, kinex::emit_plot_svg(table, spec));
      std::cerr << "wrote " << out_path.string() << '\n';
    }
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
