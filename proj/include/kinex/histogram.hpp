#ifndef KINEX_HISTOGRAM_HPP
#define KINEX_HISTOGRAM_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace kinex {

enum class Binning { Linear, Log };

// Binned counts over half-open bins [edge_k, edge_k+1). Samples below the
// range go to underflow, samples at or above the top edge to overflow, so
// counts + underflow + overflow always equals the input size.
struct Histogram {
  Binning binning = Binning::Linear;
  std::vector<double> edges;            // n_bins + 1, strictly increasing
  std::vector<std::uint64_t> counts;    // n_bins
  std::uint64_t underflow = 0;
  std::uint64_t overflow = 0;

  std::uint64_t total() const;
  // count / (total * bin width); 0 for an empty histogram.
  double density(std::size_t bin) const;
};

// Log binning requires lo > 0. Bin membership is computed from the bin
// index formula (linear or log position scaled by n_bins), which keeps
// decade samples on their nominal edges; the stored edges are the same
// formula evaluated at the integer grid with the endpoints pinned to lo
// and hi. An empty input yields a valid all-zero histogram.
Histogram make_histogram(std::span<const double> values, Binning binning,
                         std::size_t n_bins, double lo, double hi);

}  // namespace kinex

#endif  // KINEX_HISTOGRAM_HPP
