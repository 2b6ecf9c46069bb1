#include "kinex/fits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "kinex/histogram.hpp"

namespace kinex {

namespace {

// r^2 of the least-squares line through the points; 1 when the points
// cannot deviate from a line (fewer than three, or zero spread).
double line_r_squared(const std::vector<double>& xs,
                      const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  if (n < 3) return 1.0;
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += xs[i];
    mean_y += ys[i];
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mean_x;
    const double dy = ys[i] - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (syy == 0.0) return 1.0;
  if (sxx == 0.0) return 0.0;
  const double r2 = (sxy * sxy) / (sxx * syy);
  return std::min(r2, 1.0);
}

}  // namespace

ExponentialFit fit_exponential(std::span<const double> values,
                               double window_lo, double window_hi,
                               std::size_t r2_bins) {
  if (!(window_lo < window_hi)) {
    throw std::invalid_argument("fit_exponential: window requires lo < hi");
  }
  if (r2_bins < 1) {
    throw std::invalid_argument("fit_exponential: r2_bins must be positive");
  }
  std::vector<double> in_window;
  for (const double v : values) {
    if (v >= window_lo && v <= window_hi) in_window.push_back(v);
  }
  if (in_window.size() < 10) {
    throw FitError("fit_exponential: need at least 10 samples in window, got " +
                   std::to_string(in_window.size()));
  }

  double sum_excess = 0.0;
  double v_max = window_lo;
  for (const double v : in_window) {
    sum_excess += v - window_lo;
    v_max = std::max(v_max, v);
  }
  const double temperature =
      sum_excess / static_cast<double>(in_window.size());
  if (temperature <= 0.0) {
    throw FitError("fit_exponential: degenerate fit, all samples at window_lo");
  }

  ExponentialFit fit;
  fit.temperature = temperature;
  fit.window_lo = window_lo;
  fit.window_hi = window_hi;
  fit.n_in_window = in_window.size();

  // Log-density line over a linear histogram of the in-window subsample.
  // The top edge sits one ulp above the largest sample so nothing falls
  // into overflow; empty bins are excluded (natural log).
  const double hist_hi =
      std::nextafter(v_max, std::numeric_limits<double>::infinity());
  const Histogram hist = make_histogram(in_window, Binning::Linear, r2_bins,
                                        window_lo, hist_hi);
  std::vector<double> centers, log_density;
  for (std::size_t k = 0; k < hist.counts.size(); ++k) {
    if (hist.counts[k] == 0) continue;
    centers.push_back(0.5 * (hist.edges[k] + hist.edges[k + 1]));
    log_density.push_back(std::log(hist.density(k)));
  }
  fit.r_squared_loglinear = line_r_squared(centers, log_density);
  return fit;
}

ParetoFit fit_pareto_hill(std::span<const double> values, double xmin) {
  if (!(xmin > 0.0)) {
    throw std::invalid_argument("fit_pareto_hill: xmin must be > 0");
  }
  double log_sum = 0.0;
  std::size_t n_tail = 0;
  for (const double v : values) {
    if (!(v > 0.0)) {
      throw std::invalid_argument(
          "fit_pareto_hill: all samples must be > 0");
    }
    if (v > xmin) {
      log_sum += std::log(v / xmin);
      ++n_tail;
    }
  }
  if (n_tail < 10) {
    throw FitError("fit_pareto_hill: need at least 10 samples above xmin, got " +
                   std::to_string(n_tail));
  }
  ParetoFit fit;
  fit.alpha = 1.0 + static_cast<double>(n_tail) / log_sum;
  fit.xmin = xmin;
  fit.n_tail = n_tail;
  return fit;
}

double ks_distance(std::span<const double> values,
                   const std::function<double(double)>& model_cdf) {
  if (values.empty()) {
    throw std::invalid_argument("ks_distance: empty input");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double dist = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double x = sorted[i];
    // The model may itself jump at a sample point, so the comparison
    // against the empirical value just below x uses the model's left
    // limit. For a continuous model this changes nothing.
    const double left =
        model_cdf(std::nextafter(x, -std::numeric_limits<double>::infinity()));
    const double right = model_cdf(x);
    const double below = static_cast<double>(i) / n;      // empirical F(x-)
    const double above = static_cast<double>(i + 1) / n;  // empirical F(x)
    dist = std::max(dist, std::max(left - below, above - right));
  }
  return dist;
}

double tail_thinning_index(std::span<const double> values,
                           const ExponentialFit& fit, double probe) {
  if (values.empty()) {
    throw std::invalid_argument("tail_thinning_index: empty input");
  }
  if (!(probe > fit.window_hi)) {
    throw std::invalid_argument(
        "tail_thinning_index: probe must lie beyond the fit window");
  }
  if (!(fit.temperature > 0.0)) {
    throw std::invalid_argument("tail_thinning_index: fit temperature not positive");
  }
  std::size_t at_probe = 0, at_edge = 0;
  for (const double v : values) {
    if (v >= probe) ++at_probe;
    if (v >= fit.window_hi) ++at_edge;
  }
  if (at_probe == 0) return 0.0;
  const double n = static_cast<double>(values.size());
  const double c_probe = static_cast<double>(at_probe) / n;
  const double c_edge = static_cast<double>(at_edge) / n;
  // exp(-(x - window_lo)/T) scaled to meet the empirical CCDF at the
  // window's upper edge.
  const double c_model =
      c_edge * std::exp(-(probe - fit.window_hi) / fit.temperature);
  return c_probe / c_model;
}

}  // namespace kinex
