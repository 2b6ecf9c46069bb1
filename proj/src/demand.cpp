#include "kinex/demand.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kinex {

std::vector<DemandPoint> summarize_demand(
    std::span<const std::pair<double, std::vector<double>>> runs) {
  if (runs.empty()) {
    throw std::invalid_argument("summarize_demand: no runs given");
  }
  std::vector<DemandPoint> points;
  points.reserve(runs.size());
  for (const auto& [ratio, samples] : runs) {
    if (samples.empty()) {
      throw std::invalid_argument(
          "summarize_demand: a run has no price samples");
    }
    const double n = static_cast<double>(samples.size());
    double mean = 0.0;
    for (const double v : samples) mean += v;
    mean /= n;
    double var = 0.0;
    for (const double v : samples) var += (v - mean) * (v - mean);
    var /= n;
    points.push_back({ratio, mean, std::sqrt(var), samples.size()});
  }
  std::stable_sort(points.begin(), points.end(),
                   [](const DemandPoint& a, const DemandPoint& b) {
                     return a.ratio < b.ratio;
                   });
  return points;
}

}  // namespace kinex
