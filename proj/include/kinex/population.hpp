#ifndef KINEX_POPULATION_HPP
#define KINEX_POPULATION_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "kinex/agent.hpp"
#include "kinex/rng.hpp"

namespace kinex {

// Simulation state: the agents plus the totals fixed at initialization.
// Trades conserve goods exactly and money up to floating rounding, so the
// cached totals stay valid for the whole run. step_count counts encounters,
// whether or not they traded.
struct Population {
  std::vector<Agent> agents;
  std::int64_t total_goods = 0;
  double total_money = 0.0;
  std::uint64_t step_count = 0;

  std::size_t size() const { return agents.size(); }
};

struct EncounterOutcome {
  std::size_t buyer_index = 0;
  std::size_t seller_index = 0;
  bool traded = false;
  // True when the purchase happened only because the buyer held no goods
  // and therefore accepted a price above its own.
  bool forced = false;
  std::optional<double> price;  // transaction price, set iff traded
  int quantity = 0;             // 1 iff traded
};

struct Totals {
  std::int64_t goods = 0;
  double money = 0.0;
  double wealth = 0.0;
};

// Per-agent copy of the state after a given step, with derived wealth.
struct Snapshot {
  std::uint64_t step = 0;
  std::vector<Agent> agents;
  std::vector<double> wealth;
};

using SnapshotSeries = std::vector<Snapshot>;

// Evenly endowed population: floor(total_goods / n) goods each with the
// remainder going to the lowest indices, exactly total_money / n money
// each, and perceived prices drawn uniformly from [h_min, h_max] in agent
// order (one draw per agent).
Population init_population(std::size_t n, std::int64_t total_goods,
                           double total_money, double h_min, double h_max,
                           RngStream& rng);

// Applies the buyer-side trade rule to an ordered (buyer, seller) pair.
// The seller's perceived price is the offer. One unit changes hands iff
// the seller has goods, the buyer can pay, and either the offer is at or
// below the buyer's own price or the buyer has no goods at all. On a
// trade the buyer adopts the transaction price; the seller's price never
// changes. Throws std::invalid_argument on equal or out-of-range indices.
EncounterOutcome attempt_trade(Population& pop, std::size_t buyer,
                               std::size_t seller);

// One encounter: an ordered pair drawn uniformly from the n*(n-1) ordered
// pairs with exactly two generator draws — buyer first, then the seller
// from the n-1 remaining slots (indices at or above the buyer shift up by
// one, so the pair can never be equal). step_count advances whether or
// not a trade happened.
EncounterOutcome step(Population& pop, RngStream& rng);

// Executes n_steps encounters, capturing a snapshot after each listed
// step index (index 0 means the state before any step). Indices must be
// strictly increasing and at most n_steps.
SnapshotSeries run(Population& pop, std::uint64_t n_steps,
                   const std::vector<std::uint64_t>& snapshot_at,
                   RngStream& rng);

// Fresh sums over the agents. Goods and money track the cached totals;
// total wealth is free to drift because perceived prices are not conserved.
Totals population_totals(const Population& pop);

}  // namespace kinex

#endif  // KINEX_POPULATION_HPP
