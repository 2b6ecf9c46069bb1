#include "kinex/ccdf.hpp"

#include <algorithm>
#include <stdexcept>

namespace kinex {

Ccdf::Ccdf(std::vector<double> values) : sorted_(std::move(values)) {
  if (sorted_.empty()) {
    throw std::invalid_argument("make_ccdf: empty input");
  }
  std::sort(sorted_.begin(), sorted_.end());
}

double Ccdf::operator()(double x) const {
  const auto it = std::lower_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(sorted_.end() - it) /
         static_cast<double>(sorted_.size());
}

std::vector<std::pair<double, double>> Ccdf::points() const {
  std::vector<std::pair<double, double>> pts;
  const double n = static_cast<double>(sorted_.size());
  for (std::size_t i = 0; i < sorted_.size(); ++i) {
    if (i > 0 && sorted_[i] == sorted_[i - 1]) continue;
    pts.emplace_back(sorted_[i], static_cast<double>(sorted_.size() - i) / n);
  }
  return pts;
}

Ccdf make_ccdf(std::span<const double> values) {
  return Ccdf(std::vector<double>(values.begin(), values.end()));
}

}  // namespace kinex
