#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "kinex/config.hpp"
#include "kinex/csv.hpp"
#include "kinex/experiments.hpp"
#include "kinex/io_util.hpp"

namespace fs = std::filesystem;
using kinex::CsvTable;
using kinex::ExperimentConfig;
using kinex::ExperimentOutput;
using kinex::parse_csv;
using kinex::read_file;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "kinex_exp_test" / name;
  fs::remove_all(dir);
  return dir;
}

ExperimentConfig small_config(const std::string& name) {
  ExperimentConfig cfg;
  cfg.n_agents = 80;
  cfg.total_goods = 80;
  cfg.total_money = 80.0;
  cfg.n_sweeps = 200;
  cfg.burn_in_sweeps = 50;
  cfg.out_dir = fresh_dir(name).string();
  return cfg;
}

CsvTable load_csv(const ExperimentOutput& out, const std::string& file) {
  return parse_csv(read_file(out.dir / file));
}

}  // namespace

TEST_CASE("a wealth run emits the full file set with a manifest") {
  ExperimentConfig cfg = small_config("wealth_files");
  const ExperimentOutput out = kinex::run_wealth_experiment(cfg);

  const std::set<std::string> files(out.files.begin(), out.files.end());
  for (const char* name :
       {"wealth_samples.csv", "wealth_ccdf.csv", "wealth_hist_linear.csv",
        "wealth_hist_log.csv", "fits.json", "manifest.json"}) {
    CAPTURE(name);
    CHECK(files.contains(name));
    CHECK(fs::exists(out.dir / name));
  }
  CHECK(out.files.back() == "manifest.json");

  const CsvTable samples = load_csv(out, "wealth_samples.csv");
  CHECK(samples.header ==
        std::vector<std::string>{"agent_id", "b", "d", "h", "wealth"});
  CHECK(samples.rows.size() == cfg.n_agents);

  // Sampled wealth must tie out to its own columns.
  const auto b = samples.numeric_column("b");
  const auto d = samples.numeric_column("d");
  const auto h = samples.numeric_column("h");
  const auto w = samples.numeric_column("wealth");
  for (std::size_t i = 0; i < w.size(); ++i) {
    CHECK(w[i] == doctest::Approx(d[i] + h[i] * b[i]).epsilon(1e-12));
  }

  const auto manifest = nlohmann::json::parse(read_file(out.dir / "manifest.json"));
  CHECK(manifest["code_version"] == std::string(kinex::kVersion));
  CHECK(manifest["checksum_algo"] == "fnv1a64");
  CHECK(manifest["config"]["n_agents"] == cfg.n_agents);
  // Every emitted file except the manifest itself is checksummed.
  for (const std::string& name : out.files) {
    if (name == "manifest.json") continue;
    const std::string actual =
        kinex::fnv1a64_hex(read_file(out.dir / name));
    CHECK(manifest["files"][name] == actual);
  }
  fs::remove_all(out.dir);
}

TEST_CASE("zero sweeps samples the initial endowment") {
  ExperimentConfig cfg = small_config("wealth_zero");
  cfg.n_sweeps = 0;
  cfg.burn_in_sweeps = 0;
  const ExperimentOutput out = kinex::run_wealth_experiment(cfg);
  const CsvTable samples = load_csv(out, "wealth_samples.csv");
  const auto b = samples.numeric_column("b");
  const auto d = samples.numeric_column("d");
  for (const double v : b) CHECK(v == 1.0);   // 80 goods over 80 agents
  for (const double v : d) CHECK(v == 1.0);   // 80 money over 80 agents
  fs::remove_all(out.dir);
}

TEST_CASE("reruns of the same config are byte identical") {
  ExperimentConfig cfg = small_config("wealth_rerun_a");
  const ExperimentOutput first = kinex::run_wealth_experiment(cfg);

  std::vector<std::string> contents;
  for (const std::string& name : first.files) {
    if (name == "manifest.json") continue;
    contents.push_back(read_file(first.dir / name));
  }
  // The manifest embeds a wall-clock duration; its checksum map is the
  // deterministic part.
  const auto checksums =
      nlohmann::json::parse(read_file(first.dir / "manifest.json"))["files"];

  cfg.out_dir = fresh_dir("wealth_rerun_b").string();
  const ExperimentOutput second = kinex::run_wealth_experiment(cfg);
  REQUIRE(second.files == first.files);
  std::size_t k = 0;
  for (const std::string& name : second.files) {
    if (name == "manifest.json") continue;
    CAPTURE(name);
    CHECK(read_file(second.dir / name) == contents[k++]);
  }
  CHECK(nlohmann::json::parse(
            read_file(second.dir / "manifest.json"))["files"] == checksums);
  fs::remove_all(first.dir);
  fs::remove_all(second.dir);
}

TEST_CASE("time averaging pools every post-burn-in snapshot") {
  ExperimentConfig cfg = small_config("wealth_pooled");
  cfg.time_averaged = true;
  cfg.snapshot_sweeps = {0, 50, 100, 150, 200};
  const ExperimentOutput out = kinex::run_wealth_experiment(cfg);
  const CsvTable samples = load_csv(out, "wealth_samples.csv");
  // Snapshots at 50, 100, 150, 200 qualify (burn-in is 50).
  CHECK(samples.rows.size() == 4 * cfg.n_agents);
  fs::remove_all(out.dir);
}

TEST_CASE("the analyze pass reproduces the original fits") {
  ExperimentConfig cfg = small_config("analyze_src");
  cfg.n_agents = 300;
  cfg.total_goods = 300;
  cfg.total_money = 300.0;
  const ExperimentOutput out = kinex::run_wealth_experiment(cfg);
  const std::string fits = read_file(out.dir / "fits.json");

  ExperimentConfig re = cfg;
  re.out_dir = fresh_dir("analyze_dst").string();
  const ExperimentOutput again =
      kinex::run_analyze(re, out.dir / "wealth_samples.csv");
  CHECK(read_file(again.dir / "fits.json") == fits);
  CHECK(again.files == std::vector<std::string>{"fits.json", "manifest.json"});
  fs::remove_all(out.dir);
  fs::remove_all(again.dir);
}

TEST_CASE("analyze rejects a samples file without wealth data") {
  ExperimentConfig cfg = small_config("analyze_bad");
  const fs::path dir = fresh_dir("analyze_bad_src");
  kinex::write_file(dir / "samples.csv", "a,b\n1,2\n");
  CHECK_THROWS_AS(kinex::run_analyze(cfg, dir / "samples.csv"),
                  std::invalid_argument);
  fs::remove_all(dir);
}

TEST_CASE("the demand sweep orders rows by ratio and matches its config") {
  ExperimentConfig cfg = small_config("demand");
  cfg.ratios = {2.0, 0.5, 1.0};
  const ExperimentOutput out = kinex::run_demand_sweep(cfg);
  const CsvTable curve = load_csv(out, "demand_curve.csv");
  CHECK(curve.header ==
        std::vector<std::string>{"ratio", "mean_price", "std_price",
                                 "n_agents", "n_sweeps", "seed"});
  REQUIRE(curve.rows.size() == 3);
  const auto ratios = curve.numeric_column("ratio");
  CHECK(std::is_sorted(ratios.begin(), ratios.end()));
  CHECK(curve.numeric_column("n_agents")[0] == 80.0);
  CHECK(curve.numeric_column("seed")[0] == 42.0);
  fs::remove_all(out.dir);
}

TEST_CASE("parallel and sequential sweeps write identical bytes") {
  ExperimentConfig cfg = small_config("demand_par");
  cfg.ratios = {0.5, 1.0, 2.0, 5.0};
  cfg.parallel = true;
  const ExperimentOutput par = kinex::run_demand_sweep(cfg);
  const std::string par_curve = read_file(par.dir / "demand_curve.csv");

  cfg.out_dir = fresh_dir("demand_seq").string();
  cfg.parallel = false;
  const ExperimentOutput seq = kinex::run_demand_sweep(cfg);
  CHECK(read_file(seq.dir / "demand_curve.csv") == par_curve);
  fs::remove_all(par.dir);
  fs::remove_all(seq.dir);
}

TEST_CASE("a sweep needs at least two ratios") {
  ExperimentConfig cfg = small_config("demand_short");
  cfg.ratios = {1.0};
  CHECK_THROWS_AS(kinex::run_demand_sweep(cfg), std::invalid_argument);
  cfg.ratios.clear();
  CHECK_THROWS_AS(kinex::run_demand_sweep(cfg), std::invalid_argument);
}

TEST_CASE("price evolution writes one histogram per snapshot") {
  ExperimentConfig cfg = small_config("prices");
  cfg.snapshot_sweeps = {0, 100, 200};
  const ExperimentOutput out = kinex::run_price_evolution(cfg);
  for (const char* name :
       {"price_hist_t0.csv", "price_hist_t100.csv", "price_hist_t200.csv"}) {
    CAPTURE(name);
    CHECK(fs::exists(out.dir / name));
  }

  // Before any trading, prices are the uniform seeding on [h_min, h_max]:
  // every count lands inside and none under- or overflows.
  const CsvTable h0 = load_csv(out, "price_hist_t0.csv");
  const auto counts = h0.numeric_column("count");
  double total = 0.0;
  for (const double c : counts) total += c;
  CHECK(total == static_cast<double>(cfg.n_agents));
  CHECK(h0.rows.size() == cfg.hist_bins);
  fs::remove_all(out.dir);
}

TEST_CASE("price evolution requires snapshots and the buyer model") {
  ExperimentConfig cfg = small_config("prices_bad");
  CHECK_THROWS_AS(kinex::run_price_evolution(cfg), std::invalid_argument);
  cfg.snapshot_sweeps = {0, 100};
  cfg.model = kinex::ModelKind::Dy;
  CHECK_THROWS_AS(kinex::run_price_evolution(cfg), std::invalid_argument);
}

TEST_CASE("the comparison table carries one row per model") {
  ExperimentConfig cfg = small_config("compare");
  cfg.n_agents = 200;
  cfg.total_goods = 200;
  cfg.total_money = 200.0;
  cfg.n_sweeps = 400;
  cfg.burn_in_sweeps = 100;
  const ExperimentOutput out = kinex::run_comparison(cfg);
  const CsvTable table = load_csv(out, "comparison.csv");
  CHECK(table.header ==
        std::vector<std::string>{"model", "param", "T", "ks", "alpha",
                                 "thinning_index"});
  REQUIRE(table.rows.size() == 3);
  CHECK(table.rows[0][0] == "buyer");
  CHECK(table.rows[1][0] == "dy");
  CHECK(table.rows[2][0] == "cc");
  CHECK(table.rows[0][1] == "");
  CHECK(table.rows[1][1] == "");
  CHECK(table.rows[2][1] == "0.5");
  fs::remove_all(out.dir);
}

TEST_CASE("default price snapshots are 1-2-5 spaced and end at n_sweeps") {
  const auto s = kinex::default_price_snapshots(10000);
  CHECK(s.front() == 0);
  CHECK(s.back() == 10000);
  CHECK(std::is_sorted(s.begin(), s.end()));
  const std::vector<std::uint64_t> expected{0,   1,   2,    5,    10,  20,
                                            50,  100, 200,  500,  1000, 2000,
                                            5000, 10000};
  CHECK(s == expected);

  const auto odd = kinex::default_price_snapshots(300);
  CHECK(odd.back() == 300);
  for (std::size_t i = 1; i < odd.size(); ++i) CHECK(odd[i] > odd[i - 1]);
}
