#include "kinex/config.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace kinex {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) {
  throw std::invalid_argument(message);
}

const std::set<std::string> kKnownKeys = {
    "model",      "lambda",   "n_agents",   "goods",         "money",
    "ratio",      "h_min",    "h_max",      "sweeps",        "burn_in",
    "snapshots",  "seed",     "out",        "ratios",        "time_averaged",
    "parallel",   "fit_window", "tail_probe", "pareto_xmin", "hist_bins"};

double number_field(const json& v, const char* key) {
  if (!v.is_number()) fail(std::string("config: '") + key + "' must be a number");
  return v.get<double>();
}

std::int64_t integer_field(const json& v, const char* key) {
  if (!v.is_number_integer()) {
    fail(std::string("config: '") + key + "' must be an integer");
  }
  return v.get<std::int64_t>();
}

std::int64_t nonneg_integer_field(const json& v, const char* key) {
  const std::int64_t n = integer_field(v, key);
  if (n < 0) fail(std::string("config: '") + key + "' must be >= 0");
  return n;
}

bool bool_field(const json& v, const char* key) {
  if (!v.is_boolean()) fail(std::string("config: '") + key + "' must be a boolean");
  return v.get<bool>();
}

std::string string_field(const json& v, const char* key) {
  if (!v.is_string()) fail(std::string("config: '") + key + "' must be a string");
  return v.get<std::string>();
}

// Line and column of a byte offset, 1-based, for parse error messages.
std::pair<std::size_t, std::size_t> line_column(const std::string& text,
                                                std::size_t offset) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

std::string_view model_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::Buyer:
      return "buyer";
    case ModelKind::Dy:
      return "dy";
    case ModelKind::Cc:
      return "cc";
  }
  return "buyer";
}

ModelKind model_from_name(std::string_view name) {
  if (name == "buyer") return ModelKind::Buyer;
  if (name == "dy") return ModelKind::Dy;
  if (name == "cc") return ModelKind::Cc;
  fail("config: unknown model '" + std::string(name) +
       "' (expected buyer, dy or cc)");
}

std::int64_t goods_for_ratio(double ratio, double total_money) {
  if (!(ratio > 0.0)) fail("config: 'ratio' must be > 0");
  return std::llround(ratio * total_money);
}

void ExperimentConfig::validate() const {
  if (n_agents < 2) fail("config: 'n_agents' must be at least 2");
  if (total_goods < 0) fail("config: 'goods' must be >= 0");
  if (!(total_money >= 0.0) || !std::isfinite(total_money)) {
    fail("config: 'money' must be a finite value >= 0");
  }
  if (!(h_min > 0.0)) fail("config: 'h_min' must be > 0");
  if (!(h_min <= h_max)) fail("config: 'h_min' must not exceed 'h_max'");
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    fail("config: 'lambda' must be in [0, 1)");
  }
  if (burn_in_sweeps > n_sweeps) {
    fail("config: 'burn_in' must not exceed 'sweeps'");
  }
  for (std::size_t i = 0; i < snapshot_sweeps.size(); ++i) {
    if (snapshot_sweeps[i] > n_sweeps) {
      fail("config: 'snapshots' entries must be within [0, sweeps]");
    }
    if (i > 0 && snapshot_sweeps[i] <= snapshot_sweeps[i - 1]) {
      fail("config: 'snapshots' must be strictly increasing");
    }
  }
  for (const double r : ratios) {
    if (!(r > 0.0)) fail("config: 'ratios' entries must be > 0");
  }
  if (hist_bins < 1) fail("config: 'hist_bins' must be at least 1");
  if (fit_window_lo.has_value() != fit_window_hi.has_value()) {
    fail("config: 'fit_window' needs both endpoints");
  }
  if (fit_window_lo && !(*fit_window_lo < *fit_window_hi)) {
    fail("config: 'fit_window' requires lo < hi");
  }
  if (tail_probe && fit_window_hi && !(*tail_probe > *fit_window_hi)) {
    fail("config: 'tail_probe' must lie beyond the fit window");
  }
  if (pareto_xmin && !(*pareto_xmin > 0.0)) {
    fail("config: 'pareto_xmin' must be > 0");
  }
  if (out_dir.empty()) fail("config: 'out' must not be empty");
}

json ExperimentConfig::to_json() const {
  json j;
  j["model"] = std::string(model_name(model));
  j["lambda"] = lambda;
  j["n_agents"] = n_agents;
  j["goods"] = total_goods;
  j["money"] = total_money;
  j["h_min"] = h_min;
  j["h_max"] = h_max;
  j["sweeps"] = n_sweeps;
  j["burn_in"] = burn_in_sweeps;
  j["snapshots"] = snapshot_sweeps;
  j["seed"] = seed;
  j["out"] = out_dir;
  j["ratios"] = ratios;
  j["time_averaged"] = time_averaged;
  j["parallel"] = parallel;
  if (fit_window_lo) {
    j["fit_window"] = json::array({*fit_window_lo, *fit_window_hi});
  } else {
    j["fit_window"] = nullptr;
  }
  j["tail_probe"] = tail_probe ? json(*tail_probe) : json(nullptr);
  j["pareto_xmin"] = pareto_xmin ? json(*pareto_xmin) : json(nullptr);
  j["hist_bins"] = hist_bins;
  return j;
}

ExperimentConfig parse_config(const std::string& json_text,
                              const ConfigOverrides& overrides,
                              std::optional<std::uint64_t> env_seed) {
  ExperimentConfig cfg;
  if (env_seed) cfg.seed = *env_seed;

  // Whoever set the goods total last, and how. A ratio and an explicit
  // goods count inside the same source contradict each other.
  bool file_set_goods = false, file_set_ratio = false;
  double file_ratio = 0.0;

  if (!json_text.empty()) {
    json doc;
    try {
      doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
      const auto [line, column] = line_column(json_text, e.byte);
      fail("config: malformed JSON at line " + std::to_string(line) +
           ", column " + std::to_string(column));
    }
    if (!doc.is_object()) fail("config: top level must be a JSON object");

    std::string unknown;
    for (const auto& item : doc.items()) {
      if (!kKnownKeys.contains(item.key())) {
        if (!unknown.empty()) unknown += ", ";
        unknown += item.key();
      }
    }
    if (!unknown.empty()) fail("config: unknown keys: " + unknown);

    if (doc.contains("model")) {
      cfg.model = model_from_name(string_field(doc["model"], "model"));
    }
    if (doc.contains("lambda")) cfg.lambda = number_field(doc["lambda"], "lambda");
    if (doc.contains("n_agents")) {
      cfg.n_agents = static_cast<std::size_t>(
          nonneg_integer_field(doc["n_agents"], "n_agents"));
    }
    if (doc.contains("goods")) {
      cfg.total_goods = nonneg_integer_field(doc["goods"], "goods");
      file_set_goods = true;
    }
    if (doc.contains("money")) cfg.total_money = number_field(doc["money"], "money");
    if (doc.contains("ratio")) {
      file_ratio = number_field(doc["ratio"], "ratio");
      file_set_ratio = true;
    }
    if (file_set_goods && file_set_ratio) {
      fail("config: 'goods' and 'ratio' cannot both be given");
    }
    if (doc.contains("h_min")) cfg.h_min = number_field(doc["h_min"], "h_min");
    if (doc.contains("h_max")) cfg.h_max = number_field(doc["h_max"], "h_max");
    if (doc.contains("sweeps")) {
      cfg.n_sweeps =
          static_cast<std::uint64_t>(nonneg_integer_field(doc["sweeps"], "sweeps"));
    }
    if (doc.contains("burn_in")) {
      cfg.burn_in_sweeps = static_cast<std::uint64_t>(
          nonneg_integer_field(doc["burn_in"], "burn_in"));
    }
    if (doc.contains("snapshots")) {
      if (!doc["snapshots"].is_array()) fail("config: 'snapshots' must be an array");
      cfg.snapshot_sweeps.clear();
      for (const auto& v : doc["snapshots"]) {
        cfg.snapshot_sweeps.push_back(
            static_cast<std::uint64_t>(nonneg_integer_field(v, "snapshots")));
      }
    }
    if (doc.contains("seed")) {
      if (!doc["seed"].is_number_integer()) fail("config: 'seed' must be an integer");
      cfg.seed = doc["seed"].get<std::uint64_t>();
    }
    if (doc.contains("out")) cfg.out_dir = string_field(doc["out"], "out");
    if (doc.contains("ratios")) {
      if (!doc["ratios"].is_array()) fail("config: 'ratios' must be an array");
      cfg.ratios.clear();
      for (const auto& v : doc["ratios"]) {
        cfg.ratios.push_back(number_field(v, "ratios"));
      }
    }
    if (doc.contains("time_averaged")) {
      cfg.time_averaged = bool_field(doc["time_averaged"], "time_averaged");
    }
    if (doc.contains("parallel")) {
      cfg.parallel = bool_field(doc["parallel"], "parallel");
    }
    if (doc.contains("fit_window") && !doc["fit_window"].is_null()) {
      const auto& w = doc["fit_window"];
      if (!w.is_array() || w.size() != 2) {
        fail("config: 'fit_window' must be [lo, hi]");
      }
      cfg.fit_window_lo = number_field(w[0], "fit_window");
      cfg.fit_window_hi = number_field(w[1], "fit_window");
    }
    if (doc.contains("tail_probe") && !doc["tail_probe"].is_null()) {
      cfg.tail_probe = number_field(doc["tail_probe"], "tail_probe");
    }
    if (doc.contains("pareto_xmin") && !doc["pareto_xmin"].is_null()) {
      cfg.pareto_xmin = number_field(doc["pareto_xmin"], "pareto_xmin");
    }
    if (doc.contains("hist_bins")) {
      cfg.hist_bins = static_cast<std::size_t>(
          nonneg_integer_field(doc["hist_bins"], "hist_bins"));
    }
  }

  if (overrides.goods && overrides.ratio) {
    fail("config: --goods and --ratio cannot both be given");
  }
  if (overrides.model) cfg.model = model_from_name(*overrides.model);
  if (overrides.lambda) cfg.lambda = *overrides.lambda;
  if (overrides.n_agents) {
    if (*overrides.n_agents < 0) fail("config: 'n_agents' must be >= 0");
    cfg.n_agents = static_cast<std::size_t>(*overrides.n_agents);
  }
  if (overrides.money) cfg.total_money = *overrides.money;
  if (overrides.h_min) cfg.h_min = *overrides.h_min;
  if (overrides.h_max) cfg.h_max = *overrides.h_max;
  if (overrides.sweeps) {
    if (*overrides.sweeps < 0) fail("config: 'sweeps' must be >= 0");
    cfg.n_sweeps = static_cast<std::uint64_t>(*overrides.sweeps);
  }
  if (overrides.burn_in) {
    if (*overrides.burn_in < 0) fail("config: 'burn_in' must be >= 0");
    cfg.burn_in_sweeps = static_cast<std::uint64_t>(*overrides.burn_in);
  }
  if (overrides.snapshots) cfg.snapshot_sweeps = *overrides.snapshots;
  if (overrides.seed) cfg.seed = *overrides.seed;
  if (overrides.out_dir) cfg.out_dir = *overrides.out_dir;
  if (overrides.ratios) cfg.ratios = *overrides.ratios;
  if (overrides.time_averaged) cfg.time_averaged = *overrides.time_averaged;
  if (overrides.parallel) cfg.parallel = *overrides.parallel;

  // The goods total resolves last so a ratio always applies to the final
  // money amount; a flag beats whatever the file chose.
  if (overrides.goods) {
    if (*overrides.goods < 0) fail("config: 'goods' must be >= 0");
    cfg.total_goods = *overrides.goods;
  } else if (overrides.ratio) {
    cfg.total_goods = goods_for_ratio(*overrides.ratio, cfg.total_money);
  } else if (file_set_ratio) {
    cfg.total_goods = goods_for_ratio(file_ratio, cfg.total_money);
  }

  cfg.validate();
  return cfg;
}

}  // namespace kinex
