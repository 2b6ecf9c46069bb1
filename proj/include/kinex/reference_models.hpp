#ifndef KINEX_REFERENCE_MODELS_HPP
#define KINEX_REFERENCE_MODELS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "kinex/rng.hpp"

namespace kinex {

// Conservative money-exchange baselines run behind the same stepping and
// seeding conventions as the goods market, so their distributions can be
// compared on matched time axes.

// Pooled random split: the pair's combined money is redistributed by a
// fresh uniform epsilon. The sum is preserved up to one rounding.
std::pair<double, double> dy_exchange(double d_i, double d_j, double epsilon);

// Saving-propensity variant: each agent keeps the fraction lambda of its
// own money and only the rest is pooled and split. lambda = 0 reduces
// exactly to dy_exchange.
std::pair<double, double> cc_exchange(double d_i, double d_j, double lambda,
                                      double epsilon);

struct MoneyPopulation {
  std::vector<double> money;  // every entry >= 0
  std::uint64_t step_count = 0;
};

struct MoneySnapshot {
  std::uint64_t sweep = 0;
  std::vector<double> money;
};

struct ReferenceResult {
  MoneyPopulation population;
  std::vector<MoneySnapshot> snapshots;
};

// Runs n_sweeps * n encounters starting from everyone at exactly
// mean_money. Each encounter draws an unordered pair (same two-draw
// scheme as the goods market: first index, then one of the n-1 others)
// and a fresh epsilon, in that order. Snapshot indices are in sweeps,
// strictly increasing, with 0 meaning the initial state.
ReferenceResult run_reference(std::size_t n, double mean_money,
                              std::uint64_t n_sweeps,
                              const std::vector<std::uint64_t>& snapshot_sweeps,
                              double lambda, RngStream& rng);

}  // namespace kinex

#endif  // KINEX_REFERENCE_MODELS_HPP
