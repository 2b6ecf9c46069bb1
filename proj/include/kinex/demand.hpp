#ifndef KINEX_DEMAND_HPP
#define KINEX_DEMAND_HPP

#include <span>
#include <utility>
#include <vector>

namespace kinex {

struct DemandPoint {
  double ratio = 0.0;       // goods : money
  double mean_price = 0.0;  // mean stationary perceived price
  double std_price = 0.0;   // population standard deviation (divisor n)
  std::size_t n = 0;        // samples behind the summary
};

// Per-ratio mean and spread of stationary price samples, ordered by ratio.
// Every run needs at least one sample; an empty run set is an error.
std::vector<DemandPoint> summarize_demand(
    std::span<const std::pair<double, std::vector<double>>> runs);

}  // namespace kinex

#endif  // KINEX_DEMAND_HPP
