#include "kinex/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <future>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "kinex/ccdf.hpp"
#include "kinex/csv.hpp"
#include "kinex/demand.hpp"
#include "kinex/fits.hpp"
#include "kinex/histogram.hpp"
#include "kinex/io_util.hpp"
#include "kinex/population.hpp"
#include "kinex/reference_models.hpp"
#include "kinex/rng.hpp"

namespace kinex {
namespace {

// Quantile rule for the default thermal window. The window must be wide in
// units of the temperature to keep the mean-excess truncation bias small,
// yet end before the extreme tail so the log-linear check and the thinning
// probe stay meaningful. The probe sits half a window width past the edge.
constexpr double kWindowLoQuantile = 0.35;
constexpr double kWindowHiQuantile = 0.99;
constexpr double kProbeFactor = 0.5;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Upper empirical quantile of a sorted nonempty sample.
double quantile(const std::vector<double>& sorted, double p) {
  const std::size_t n = sorted.size();
  if (p <= 0.0) {
    return sorted.front();
  }
  auto idx = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
  idx = std::clamp<std::size_t>(idx, 1, n);
  return sorted[idx - 1];
}

// One sampled agent state; for the money-only reference models goods and
// price are identically zero and wealth equals money.
struct SampleRow {
  std::uint64_t agent = 0;
  std::int64_t goods = 0;
  double money = 0.0;
  double price = 0.0;
  double wealth = 0.0;
};

std::vector<SampleRow> rows_from(const std::vector<Agent>& agents,
                                 const std::vector<double>& wealth) {
  std::vector<SampleRow> rows;
  rows.reserve(agents.size());
  for (std::size_t i = 0; i < agents.size(); ++i) {
    rows.push_back({i, agents[i].goods, agents[i].money,
                    agents[i].perceived_price, wealth[i]});
  }
  return rows;
}

// Snapshot sweeps that contribute samples in time-averaged mode: the
// configured snapshots at or after the burn-in. Empty means final state
// only.
std::vector<std::uint64_t> pooled_sweeps(const ExperimentConfig& cfg) {
  std::vector<std::uint64_t> out;
  if (!cfg.time_averaged) {
    return out;
  }
  for (std::uint64_t s : cfg.snapshot_sweeps) {
    if (s >= cfg.burn_in_sweeps) {
      out.push_back(s);
    }
  }
  return out;
}

// Runs the configured model on one rng stream and returns the sampled
// per-agent states: the final state, or every pooled snapshot when
// time-averaging is on.
std::vector<SampleRow> run_model_samples(const ExperimentConfig& cfg,
                                         std::uint64_t stream_id) {
  RngStream rng(cfg.seed, stream_id);
  const std::vector<std::uint64_t> pool = pooled_sweeps(cfg);
  std::vector<SampleRow> rows;
  if (cfg.model == ModelKind::Buyer) {
    Population pop = init_population(cfg.n_agents, cfg.total_goods,
                                     cfg.total_money, cfg.h_min, cfg.h_max,
                                     rng);
    const std::uint64_t per_sweep = cfg.n_agents;
    std::vector<std::uint64_t> at;
    at.reserve(pool.size());
    for (std::uint64_t s : pool) {
      at.push_back(s * per_sweep);
    }
    SnapshotSeries series = run(pop, cfg.n_sweeps * per_sweep, at, rng);
    if (series.empty()) {
      std::vector<double> w;
      w.reserve(pop.size());
      for (const Agent& a : pop.agents) {
        w.push_back(agent_wealth(a));
      }
      rows = rows_from(pop.agents, w);
    } else {
      for (const Snapshot& snap : series) {
        std::vector<SampleRow> part = rows_from(snap.agents, snap.wealth);
        rows.insert(rows.end(), part.begin(), part.end());
      }
    }
    return rows;
  }
  const double mean_money =
      cfg.total_money / static_cast<double>(cfg.n_agents);
  const double lambda = cfg.model == ModelKind::Cc ? cfg.lambda : 0.0;
  ReferenceResult res = run_reference(cfg.n_agents, mean_money, cfg.n_sweeps,
                                      pool, lambda, rng);
  auto append = [&rows](const std::vector<double>& money) {
    for (std::size_t i = 0; i < money.size(); ++i) {
      rows.push_back({i, 0, money[i], 0.0, money[i]});
    }
  };
  if (res.snapshots.empty()) {
    append(res.population.money);
  } else {
    for (const MoneySnapshot& snap : res.snapshots) {
      append(snap.money);
    }
  }
  return rows;
}

// ---------------------------------------------------------------------
// Fit pipeline

struct FitReport {
  std::size_t n_samples = 0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  double probe = 0.0;
  double xmin = 0.0;
  std::optional<ExponentialFit> exponential;
  std::optional<ParetoFit> pareto;
  std::optional<double> thinning;
  std::string exponential_error;
  std::string pareto_error;
  std::string thinning_error;
};

// Resolves the window (explicit config values win, the quantile rule fills
// the rest) and runs the three fits, recording failures as messages.
FitReport analyze_wealth(std::vector<double> values,
                         const ExperimentConfig& cfg) {
  FitReport rep;
  rep.n_samples = values.size();
  if (values.empty()) {
    rep.exponential_error = "no samples";
    rep.pareto_error = "no samples";
    rep.thinning_error = "no samples";
    return rep;
  }
  std::sort(values.begin(), values.end());
  rep.window_lo = cfg.fit_window_lo ? *cfg.fit_window_lo
                                    : quantile(values, kWindowLoQuantile);
  rep.window_hi = cfg.fit_window_hi ? *cfg.fit_window_hi
                                    : quantile(values, kWindowHiQuantile);
  rep.probe = cfg.tail_probe
                  ? *cfg.tail_probe
                  : rep.window_hi + kProbeFactor * (rep.window_hi - rep.window_lo);
  rep.xmin = cfg.pareto_xmin ? *cfg.pareto_xmin : rep.window_hi;
  try {
    rep.exponential = fit_exponential(values, rep.window_lo, rep.window_hi);
  } catch (const FitError& e) {
    rep.exponential_error = e.what();
  }
  try {
    rep.pareto = fit_pareto_hill(values, rep.xmin);
  } catch (const std::exception& e) {  // FitError or domain errors
    rep.pareto_error = e.what();
  }
  if (rep.exponential) {
    try {
      rep.thinning = tail_thinning_index(values, *rep.exponential, rep.probe);
    } catch (const std::exception& e) {
      rep.thinning_error = e.what();
    }
  } else {
    rep.thinning_error = "no exponential fit";
  }
  return rep;
}

nlohmann::json fit_report_json(const FitReport& rep) {
  nlohmann::json j;
  j["n_samples"] = rep.n_samples;
  j["window_lo"] = rep.window_lo;
  j["window_hi"] = rep.window_hi;
  j["tail_probe"] = rep.probe;
  j["pareto_xmin"] = rep.xmin;
  if (rep.exponential) {
    j["temperature"] = rep.exponential->temperature;
    j["n_in_window"] = rep.exponential->n_in_window;
    j["r_squared_loglinear"] = rep.exponential->r_squared_loglinear;
  } else {
    j["exponential_error"] = rep.exponential_error;
  }
  if (rep.pareto) {
    j["alpha"] = rep.pareto->alpha;
    j["n_tail"] = rep.pareto->n_tail;
  } else {
    j["pareto_error"] = rep.pareto_error;
  }
  if (rep.thinning) {
    j["tail_thinning_index"] = *rep.thinning;
  } else {
    j["thinning_error"] = rep.thinning_error;
  }
  return j;
}

// ---------------------------------------------------------------------
// Output collection: files are built in memory, written together, and the
// manifest (config echo, checksums) always lands last, so an aborted run
// never leaves a manifest pointing at missing files. Everything in the
// manifest is a function of config+seed, keeping reruns byte-identical.

class Outputs {
 public:
  explicit Outputs(const ExperimentConfig& cfg) : cfg_(cfg) {}

  void add(std::string name, std::string content) {
    files_.emplace_back(std::move(name), std::move(content));
  }

  ExperimentOutput commit() {
    const std::filesystem::path dir(cfg_.out_dir);
    ExperimentOutput out;
    out.dir = dir;
    nlohmann::json checksums = nlohmann::json::object();
    for (const auto& [name, content] : files_) {
      write_file(dir / name, content);
      checksums[name] = fnv1a64_hex(content);
      out.files.push_back(name);
    }
    nlohmann::json manifest;
    manifest["code_version"] = std::string(kVersion);
    manifest["checksum_algo"] = "fnv1a64";
    manifest["config"] = cfg_.to_json();
    manifest["files"] = checksums;
    write_file(dir / "manifest.json", manifest.dump(2) + "\n");
    out.files.push_back("manifest.json");
    return out;
  }

 private:
  ExperimentConfig cfg_;
  std::vector<std::pair<std::string, std::string>> files_;
};

// ---------------------------------------------------------------------
// CSV emitters

std::string samples_csv(const std::vector<SampleRow>& rows) {
  CsvBuilder csv({"agent_id", "b", "d", "h", "wealth"});
  for (const SampleRow& r : rows) {
    csv.cell(r.agent).cell(r.goods).cell(r.money).cell(r.price).cell(r.wealth);
    csv.end_row();
  }
  return csv.take();
}

std::string hist_csv(const Histogram& h) {
  CsvBuilder csv({"bin_left", "bin_right", "count", "density"});
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    csv.cell(h.edges[b]).cell(h.edges[b + 1]).cell(h.counts[b]).cell(
        h.density(b));
    csv.end_row();
  }
  return csv.take();
}

std::string ccdf_csv(const Ccdf& c) {
  CsvBuilder csv({"x", "ccdf"});
  for (const auto& [x, p] : c.points()) {
    csv.cell(x).cell(p);
    csv.end_row();
  }
  return csv.take();
}

// Linear display bins from zero (wealth and money are nonnegative).
Histogram linear_hist(const std::vector<double>& values, std::size_t bins) {
  double hi = 0.0;
  for (double v : values) {
    hi = std::max(hi, v);
  }
  hi = hi > 0.0 ? std::nextafter(hi, kInf) : 1.0;
  return make_histogram(values, Binning::Linear, bins, 0.0, hi);
}

// Log display bins over the positive samples; degenerates to a unit range
// when there are none (everything lands in underflow then).
Histogram log_hist(const std::vector<double>& values, std::size_t bins) {
  double lo = kInf;
  double hi = 0.0;
  for (double v : values) {
    if (v > 0.0) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (!(lo < kInf)) {
    lo = 1.0;
    hi = 2.0;
  } else {
    hi = std::nextafter(hi, kInf);
  }
  return make_histogram(values, Binning::Log, bins, lo, hi);
}

std::vector<double> wealth_of(const std::vector<SampleRow>& rows) {
  std::vector<double> w;
  w.reserve(rows.size());
  for (const SampleRow& r : rows) {
    w.push_back(r.wealth);
  }
  return w;
}

}  // namespace

ExperimentOutput run_wealth_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  Outputs out(cfg);
  const std::vector<SampleRow> rows = run_model_samples(cfg, 0);
  const std::vector<double> wealth = wealth_of(rows);
  out.add("wealth_samples.csv", samples_csv(rows));
  out.add("wealth_ccdf.csv", ccdf_csv(make_ccdf(wealth)));
  out.add("wealth_hist_linear.csv",
          hist_csv(linear_hist(wealth, cfg.hist_bins)));
  out.add("wealth_hist_log.csv", hist_csv(log_hist(wealth, cfg.hist_bins)));
  out.add("fits.json", fit_report_json(analyze_wealth(wealth, cfg)).dump(2) + "\n");
  return out.commit();
}

ExperimentOutput run_price_evolution(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.model != ModelKind::Buyer) {
    throw std::invalid_argument("price evolution requires the buyer model");
  }
  if (cfg.snapshot_sweeps.empty()) {
    throw std::invalid_argument(
        "price evolution needs at least one snapshot sweep");
  }
  RngStream rng(cfg.seed, 0);
  Population pop = init_population(cfg.n_agents, cfg.total_goods,
                                   cfg.total_money, cfg.h_min, cfg.h_max, rng);
  const std::uint64_t per_sweep = cfg.n_agents;
  std::vector<std::uint64_t> at;
  at.reserve(cfg.snapshot_sweeps.size());
  for (std::uint64_t s : cfg.snapshot_sweeps) {
    at.push_back(s * per_sweep);
  }
  const SnapshotSeries series = run(pop, cfg.n_sweeps * per_sweep, at, rng);
  Outputs out(cfg);
  // Perceived prices never leave [h_min, h_max], so the initial support is
  // the right frame for every snapshot.
  const double hi = std::nextafter(cfg.h_max, kInf);
  for (std::size_t k = 0; k < series.size(); ++k) {
    std::vector<double> prices;
    prices.reserve(series[k].agents.size());
    for (const Agent& a : series[k].agents) {
      prices.push_back(a.perceived_price);
    }
    const Histogram h =
        make_histogram(prices, Binning::Linear, cfg.hist_bins, cfg.h_min, hi);
    out.add("price_hist_t" + std::to_string(cfg.snapshot_sweeps[k]) + ".csv",
            hist_csv(h));
  }
  return out.commit();
}

ExperimentOutput run_demand_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.model != ModelKind::Buyer) {
    throw std::invalid_argument("demand sweep requires the buyer model");
  }
  if (cfg.ratios.size() < 2) {
    throw std::invalid_argument("demand sweep needs at least two ratios");
  }
  Outputs out(cfg);
  // One independent leg per ratio: its own goods endowment and its own rng
  // stream (the list position), so the legs are order- and
  // scheduling-independent.
  auto leg = [&cfg](std::size_t k) {
    ExperimentConfig sub = cfg;
    sub.total_goods = goods_for_ratio(cfg.ratios[k], cfg.total_money);
    const std::vector<SampleRow> rows = run_model_samples(sub, k);
    std::vector<double> prices;
    prices.reserve(rows.size());
    for (const SampleRow& r : rows) {
      prices.push_back(r.price);
    }
    return prices;
  };
  std::vector<std::vector<double>> samples(cfg.ratios.size());
  if (cfg.parallel) {
    std::vector<std::future<std::vector<double>>> futures;
    futures.reserve(cfg.ratios.size());
    for (std::size_t k = 0; k < cfg.ratios.size(); ++k) {
      futures.push_back(std::async(std::launch::async, leg, k));
    }
    for (std::size_t k = 0; k < futures.size(); ++k) {
      samples[k] = futures[k].get();
    }
  } else {
    for (std::size_t k = 0; k < cfg.ratios.size(); ++k) {
      samples[k] = leg(k);
    }
  }
  std::vector<std::pair<double, std::vector<double>>> runs;
  runs.reserve(samples.size());
  for (std::size_t k = 0; k < samples.size(); ++k) {
    runs.emplace_back(cfg.ratios[k], std::move(samples[k]));
  }
  CsvBuilder csv({"ratio", "mean_price", "std_price", "n_agents", "n_sweeps",
                  "seed"});
  for (const DemandPoint& p : summarize_demand(runs)) {
    csv.cell(p.ratio)
        .cell(p.mean_price)
        .cell(p.std_price)
        .cell(static_cast<std::uint64_t>(cfg.n_agents))
        .cell(cfg.n_sweeps)
        .cell(cfg.seed);
    csv.end_row();
  }
  out.add("demand_curve.csv", csv.take());
  return out.commit();
}

ExperimentOutput run_comparison(const ExperimentConfig& cfg) {
  cfg.validate();
  Outputs out(cfg);
  struct Row {
    std::string model;
    std::string param;
    double temperature = kNan;
    double ks = kNan;
    double alpha = kNan;
    double thinning = kNan;
  };
  // All three models at matched size, mean money and sweep count, on
  // streams 0/1/2 of the same seed. The goods market reports its windowed
  // thermal fit; the money models report the plain mean temperature (their
  // stationary laws span the whole range) plus the same windowed
  // diagnostics for the tail columns.
  auto analyze_row = [&cfg](ModelKind kind, std::uint64_t stream) {
    ExperimentConfig sub = cfg;
    sub.model = kind;
    Row row;
    row.model = std::string(model_name(kind));
    if (kind == ModelKind::Cc) {
      row.param = format_double(cfg.lambda);
    }
    std::vector<double> values = wealth_of(run_model_samples(sub, stream));
    const FitReport rep = analyze_wealth(values, cfg);
    if (rep.pareto) {
      row.alpha = rep.pareto->alpha;
    }
    if (rep.thinning) {
      row.thinning = *rep.thinning;
    }
    if (kind == ModelKind::Buyer) {
      if (rep.exponential) {
        const double t = rep.exponential->temperature;
        const double lo = rep.exponential->window_lo;
        row.temperature = t;
        row.ks = ks_distance(values, [t, lo](double x) {
          return x <= lo ? 0.0 : 1.0 - std::exp(-(x - lo) / t);
        });
      }
      return row;
    }
    std::sort(values.begin(), values.end());
    try {
      const ExponentialFit full =
          fit_exponential(values, 0.0, values.back());
      const double t = full.temperature;
      row.temperature = t;
      row.ks = ks_distance(values, [t](double x) {
        return x <= 0.0 ? 0.0 : 1.0 - std::exp(-x / t);
      });
    } catch (const FitError&) {
      // degenerate run (for example zero sweeps); the columns stay nan
    }
    return row;
  };
  const std::array<std::pair<ModelKind, std::uint64_t>, 3> legs{{
      {ModelKind::Buyer, 0},
      {ModelKind::Dy, 1},
      {ModelKind::Cc, 2},
  }};
  std::array<Row, 3> rows;
  if (cfg.parallel) {
    std::array<std::future<Row>, 3> futures;
    for (std::size_t k = 0; k < legs.size(); ++k) {
      futures[k] =
          std::async(std::launch::async, analyze_row, legs[k].first,
                     legs[k].second);
    }
    for (std::size_t k = 0; k < legs.size(); ++k) {
      rows[k] = futures[k].get();
    }
  } else {
    for (std::size_t k = 0; k < legs.size(); ++k) {
      rows[k] = analyze_row(legs[k].first, legs[k].second);
    }
  }
  CsvBuilder csv({"model", "param", "T", "ks", "alpha", "thinning_index"});
  for (const Row& r : rows) {
    csv.cell(std::string_view(r.model))
        .cell(std::string_view(r.param))
        .cell(r.temperature)
        .cell(r.ks)
        .cell(r.alpha)
        .cell(r.thinning);
    csv.end_row();
  }
  out.add("comparison.csv", csv.take());
  return out.commit();
}

ExperimentOutput run_analyze(const ExperimentConfig& cfg,
                             const std::filesystem::path& samples_csv) {
  cfg.validate();
  const CsvTable table = parse_csv(read_file(samples_csv));
  std::vector<double> wealth = table.numeric_column("wealth");
  if (wealth.empty()) {
    throw std::invalid_argument("wealth sample file has no rows");
  }
  Outputs out(cfg);
  out.add("fits.json",
          fit_report_json(analyze_wealth(std::move(wealth), cfg)).dump(2) +
              "\n");
  return out.commit();
}

std::vector<std::uint64_t> default_price_snapshots(std::uint64_t n_sweeps) {
  std::vector<std::uint64_t> out{0};
  for (std::uint64_t base = 1;; base *= 10) {
    for (std::uint64_t m : {1, 2, 5}) {
      const std::uint64_t s = base * m;
      if (s > n_sweeps) {
        if (n_sweeps > out.back()) {
          out.push_back(n_sweeps);
        }
        return out;
      }
      out.push_back(s);
    }
    if (base > n_sweeps / 10) {  // keep base * 10 from overflowing
      if (n_sweeps > out.back()) {
        out.push_back(n_sweeps);
      }
      return out;
    }
  }
}

}  // namespace kinex
