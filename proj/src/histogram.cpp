#include "kinex/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kinex {

std::uint64_t Histogram::total() const {
  std::uint64_t sum = underflow + overflow;
  for (const std::uint64_t c : counts) sum += c;
  return sum;
}

double Histogram::density(std::size_t bin) const {
  const std::uint64_t n = total();
  if (n == 0) return 0.0;
  const double width = edges[bin + 1] - edges[bin];
  return static_cast<double>(counts[bin]) / (static_cast<double>(n) * width);
}

Histogram make_histogram(std::span<const double> values, Binning binning,
                         std::size_t n_bins, double lo, double hi) {
  if (n_bins < 1) {
    throw std::invalid_argument("make_histogram: need at least one bin");
  }
  if (!(lo < hi)) {
    throw std::invalid_argument("make_histogram: range requires lo < hi");
  }
  if (binning == Binning::Log && !(lo > 0.0)) {
    throw std::invalid_argument("make_histogram: log binning requires lo > 0");
  }

  Histogram h;
  h.binning = binning;
  h.counts.assign(n_bins, 0);
  h.edges.resize(n_bins + 1);

  const double log_lo = binning == Binning::Log ? std::log(lo) : 0.0;
  const double log_hi = binning == Binning::Log ? std::log(hi) : 0.0;
  for (std::size_t k = 0; k <= n_bins; ++k) {
    const double frac = static_cast<double>(k) / static_cast<double>(n_bins);
    h.edges[k] = binning == Binning::Linear
                     ? lo + (hi - lo) * frac
                     : std::exp(log_lo + (log_hi - log_lo) * frac);
  }
  h.edges.front() = lo;
  h.edges.back() = hi;

  const double bins = static_cast<double>(n_bins);
  for (const double v : values) {
    if (v < lo) {
      ++h.underflow;
      continue;
    }
    if (v >= hi) {
      ++h.overflow;
      continue;
    }
    const double pos = binning == Binning::Linear
                           ? (v - lo) / (hi - lo)
                           : (std::log(v) - log_lo) / (log_hi - log_lo);
    auto idx = static_cast<std::size_t>(pos * bins);
    idx = std::min(idx, n_bins - 1);
    ++h.counts[idx];
  }
  return h;
}

}  // namespace kinex
