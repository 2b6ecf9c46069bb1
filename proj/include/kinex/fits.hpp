#ifndef KINEX_FITS_HPP
#define KINEX_FITS_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>

namespace kinex {

// Raised when a fit has too little data or degenerates; callers that
// produce reports record the message instead of aborting.
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExponentialFit {
  double temperature = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  std::size_t n_in_window = 0;
  // Goodness of the straight line through (bin center, log density) of a
  // linear histogram of the in-window samples.
  double r_squared_loglinear = 0.0;
};

struct ParetoFit {
  double alpha = 0.0;  // tail exponent of C(x) ~ x^-(alpha-1)
  double xmin = 0.0;
  std::size_t n_tail = 0;
};

// Windowed thermal fit: T is the mean excess over window_lo of the samples
// inside [window_lo, window_hi], the closed-form stand-in for the censored
// MLE. The truncation bias for a true exponential is
// W / (exp(W/T) - 1) with W = window_hi - window_lo. Requires >= 10
// in-window samples; all samples equal to window_lo is a degenerate fit.
ExponentialFit fit_exponential(std::span<const double> values,
                               double window_lo, double window_hi,
                               std::size_t r2_bins = 20);

// Hill estimator over the samples strictly above xmin:
// alpha = 1 + n_tail / sum(log(v / xmin)). Requires >= 10 tail samples and
// a strictly positive input.
ParetoFit fit_pareto_hill(std::span<const double> values, double xmin);

// Kolmogorov-Smirnov statistic against a non-decreasing model CDF, taking
// both one-sided empirical steps at every sample point.
double ks_distance(std::span<const double> values,
                   const std::function<double(double)>& model_cdf);

// Ratio of the empirical CCDF at probe to the fitted exponential CCDF
// anchored to the empirical value at the window's upper edge. Below 1 the
// tail is thinner than thermal; 0 when no sample reaches the probe. The
// probe must lie beyond the fit window.
double tail_thinning_index(std::span<const double> values,
                           const ExponentialFit& fit, double probe);

}  // namespace kinex

#endif  // KINEX_FITS_HPP
