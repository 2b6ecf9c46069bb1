#include "kinex/population.hpp"

#include <stdexcept>
#include <string>

namespace kinex {

namespace {

// Core of the trade rule, shared by the validated entry points and the
// stepping loop. Indices must be valid and distinct.
inline EncounterOutcome apply_trade_rule(Population& pop, std::size_t buyer,
                                         std::size_t seller) {
  Agent& b = pop.agents[buyer];
  Agent& s = pop.agents[seller];
  const double price = s.perceived_price;
  const bool wants = price <= b.perceived_price || b.goods == 0;
  if (s.goods < 1 || b.money < price || !wants) {
    return {buyer, seller, false, false, std::nullopt, 0};
  }
  const bool forced = price > b.perceived_price;
  b.money -= price;
  s.money += price;
  b.goods += 1;
  s.goods -= 1;
  b.perceived_price = price;
  return {buyer, seller, true, forced, price, 1};
}

inline EncounterOutcome one_encounter(Population& pop, std::size_t n,
                                      RngStream& rng) {
  const std::size_t buyer = static_cast<std::size_t>(rng.uniform_index(n));
  std::size_t seller = static_cast<std::size_t>(rng.uniform_index(n - 1));
  if (seller >= buyer) ++seller;
  EncounterOutcome out = apply_trade_rule(pop, buyer, seller);
  ++pop.step_count;
  return out;
}

Snapshot capture(const Population& pop, std::uint64_t step_index) {
  Snapshot snap;
  snap.step = step_index;
  snap.agents = pop.agents;
  snap.wealth.reserve(pop.agents.size());
  for (const Agent& a : pop.agents) {
    snap.wealth.push_back(agent_wealth(a));
  }
  return snap;
}

}  // namespace

Population init_population(std::size_t n, std::int64_t total_goods,
                           double total_money, double h_min, double h_max,
                           RngStream& rng) {
  if (n < 2) {
    throw std::invalid_argument("init_population: need at least 2 agents");
  }
  if (total_goods < 0) {
    throw std::invalid_argument("init_population: total_goods must be >= 0");
  }
  if (!(total_money >= 0.0)) {
    throw std::invalid_argument("init_population: total_money must be >= 0");
  }
  if (!(h_min > 0.0) || !(h_min <= h_max)) {
    throw std::invalid_argument(
        "init_population: price range requires 0 < h_min <= h_max");
  }

  Population pop;
  pop.agents.resize(n);
  pop.total_goods = total_goods;
  pop.total_money = total_money;

  const std::int64_t base = total_goods / static_cast<std::int64_t>(n);
  const std::int64_t remainder = total_goods % static_cast<std::int64_t>(n);
  const double money_each = total_money / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    Agent& a = pop.agents[i];
    a.goods = base + (static_cast<std::int64_t>(i) < remainder ? 1 : 0);
    a.money = money_each;
    a.perceived_price = rng.uniform(h_min, h_max);
  }
  return pop;
}

EncounterOutcome attempt_trade(Population& pop, std::size_t buyer,
                               std::size_t seller) {
  const std::size_t n = pop.agents.size();
  if (buyer >= n || seller >= n) {
    throw std::invalid_argument("attempt_trade: agent index out of range");
  }
  if (buyer == seller) {
    throw std::invalid_argument("attempt_trade: buyer and seller must differ");
  }
  return apply_trade_rule(pop, buyer, seller);
}

EncounterOutcome step(Population& pop, RngStream& rng) {
  const std::size_t n = pop.agents.size();
  if (n < 2) {
    throw std::invalid_argument("step: need at least 2 agents");
  }
  return one_encounter(pop, n, rng);
}

SnapshotSeries run(Population& pop, std::uint64_t n_steps,
                   const std::vector<std::uint64_t>& snapshot_at,
                   RngStream& rng) {
  const std::size_t n = pop.agents.size();
  if (n < 2) {
    throw std::invalid_argument("run: need at least 2 agents");
  }
  for (std::size_t i = 0; i < snapshot_at.size(); ++i) {
    if (snapshot_at[i] > n_steps) {
      throw std::invalid_argument("run: snapshot index " +
                                  std::to_string(snapshot_at[i]) +
                                  " exceeds n_steps");
    }
    if (i > 0 && snapshot_at[i] <= snapshot_at[i - 1]) {
      throw std::invalid_argument(
          "run: snapshot indices must be strictly increasing");
    }
  }

  SnapshotSeries series;
  series.reserve(snapshot_at.size());
  std::size_t next = 0;
  if (next < snapshot_at.size() && snapshot_at[next] == 0) {
    series.push_back(capture(pop, 0));
    ++next;
  }
  for (std::uint64_t i = 1; i <= n_steps; ++i) {
    one_encounter(pop, n, rng);
    if (next < snapshot_at.size() && snapshot_at[next] == i) {
      series.push_back(capture(pop, i));
      ++next;
    }
  }
  return series;
}

Totals population_totals(const Population& pop) {
  Totals t;
  for (const Agent& a : pop.agents) {
    t.goods += a.goods;
    t.money += a.money;
    t.wealth += agent_wealth(a);
  }
  return t;
}

}  // namespace kinex
