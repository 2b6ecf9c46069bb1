#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "kinex/fits.hpp"
#include "kinex/rng.hpp"

using kinex::ExponentialFit;
using kinex::fit_exponential;
using kinex::fit_pareto_hill;
using kinex::FitError;
using kinex::ks_distance;
using kinex::ParetoFit;
using kinex::RngStream;
using kinex::tail_thinning_index;

namespace {

std::vector<double> exponential_draws(std::size_t n, double t,
                                      std::uint64_t seed) {
  RngStream rng(seed);
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(-t * std::log(1.0 - rng.next_double()));
  }
  return out;
}

}  // namespace

TEST_CASE("the fitted temperature is the mean excess over the window floor") {
  // {lo+1, lo+2, lo+3} repeated to meet the minimum sample count
  std::vector<double> values;
  for (int rep = 0; rep < 4; ++rep) {
    values.insert(values.end(), {4.0, 5.0, 6.0});
  }
  const ExponentialFit fit = fit_exponential(values, 3.0, 10.0);
  CHECK(fit.temperature == 2.0);
  CHECK(fit.n_in_window == 12);
  CHECK(fit.window_lo == 3.0);
  CHECK(fit.window_hi == 10.0);
}

TEST_CASE("the window includes both edges") {
  std::vector<double> values{1.0, 1.0, 1.0, 1.0, 1.0, 2.0,
                             2.0, 2.0, 2.0, 2.0, 3.0, 5.0};
  const ExponentialFit fit = fit_exponential(values, 1.0, 3.0);
  CHECK(fit.n_in_window == 11);  // everything but the 5
}

TEST_CASE("too few in-window samples is an error") {
  const std::vector<double> values{4.0, 5.0, 6.0};
  CHECK_THROWS_AS(fit_exponential(values, 3.0, 10.0), FitError);
}

TEST_CASE("all samples at the window floor is a degenerate fit") {
  const std::vector<double> values(12, 3.0);
  CHECK_THROWS_AS(fit_exponential(values, 3.0, 10.0), FitError);
}

TEST_CASE("windowed fit on synthetic thermal data carries the known censoring bias") {
  // Censoring at W = w_hi - w_lo pulls the mean excess down to
  // T - W/(e^{W/T} - 1); for T=2 over [0,8] that is 1.85074, which is what
  // an exact estimator must report (the raw mean over the window, not 2).
  const auto values = exponential_draws(100000, 2.0, 71);
  const ExponentialFit fit = fit_exponential(values, 0.0, 8.0);
  const double expected = 2.0 - 8.0 / (std::exp(4.0) - 1.0);
  CHECK(fit.temperature == doctest::Approx(expected).epsilon(0.012));
  CHECK(fit.r_squared_loglinear > 0.98);
}

TEST_CASE("the hill estimator is exact on a log grid") {
  std::vector<double> values;
  for (int rep = 0; rep < 4; ++rep) {
    values.push_back(std::exp(1.0));
    values.push_back(std::exp(2.0));
    values.push_back(std::exp(3.0));
  }
  const ParetoFit fit = fit_pareto_hill(values, 1.0);
  CHECK(fit.alpha == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(fit.n_tail == 12);
  CHECK(fit.xmin == 1.0);
}

TEST_CASE("a one-point tail grid matches the closed form") {
  const std::vector<double> values(12, 2.0);
  const ParetoFit fit = fit_pareto_hill(values, 1.0);
  CHECK(fit.alpha == doctest::Approx(1.0 + 1.0 / std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("hill recovers a synthetic pareto exponent") {
  RngStream rng(5);
  std::vector<double> values;
  values.reserve(100000);
  for (int i = 0; i < 100000; ++i) {
    // inverse-CDF sampling for C(x) = x^{-(alpha-1)} with alpha = 2.5
    values.push_back(std::pow(1.0 - rng.next_double(), -1.0 / 1.5));
  }
  const ParetoFit fit = fit_pareto_hill(values, 1.0);
  CHECK(fit.alpha == doctest::Approx(2.5).epsilon(0.02));
  CHECK(fit.alpha > 2.45);
  CHECK(fit.alpha < 2.55);
}

TEST_CASE("hill demands a positive threshold, positive data, enough tail") {
  const std::vector<double> ok(12, 2.0);
  CHECK_THROWS_AS(fit_pareto_hill(ok, 0.0), std::invalid_argument);
  const std::vector<double> with_zero{0.0, 2.0, 2.0, 2.0, 2.0, 2.0,
                                      2.0, 2.0, 2.0, 2.0, 2.0, 2.0};
  CHECK_THROWS_AS(fit_pareto_hill(with_zero, 1.0), std::invalid_argument);
  const std::vector<double> thin{2.0, 2.0, 2.0};
  CHECK_THROWS_AS(fit_pareto_hill(thin, 1.0), FitError);
}

TEST_CASE("samples at the model quantiles sit one slot from the model") {
  const std::size_t n = 10;
  std::vector<double> values;
  for (std::size_t i = 1; i <= n; ++i) {
    values.push_back(static_cast<double>(i) / (n + 1));  // uniform quantiles
  }
  const double d = ks_distance(
      values, [](double x) { return std::clamp(x, 0.0, 1.0); });
  CHECK(d == doctest::Approx(1.0 / (n + 1)).epsilon(1e-12));
}

TEST_CASE("a point mass matched by a step model has zero distance") {
  const std::vector<double> values{0.0};
  const double d =
      ks_distance(values, [](double x) { return x >= 0.0 ? 1.0 : 0.0; });
  CHECK(d == 0.0);
}

TEST_CASE("ks distance obeys the kolmogorov bound on model data") {
  // D_n for data drawn from the model exceeds 1.63/sqrt(n) only with
  // probability ~1%; the fixed seeds make the count reproducible.
  const std::size_t n = 10000;
  const double bound = 1.63 / std::sqrt(static_cast<double>(n));
  int violations = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto values = exponential_draws(n, 1.0, seed);
    const double d = ks_distance(
        values, [](double x) { return x <= 0.0 ? 0.0 : 1.0 - std::exp(-x); });
    if (d >= bound) {
      ++violations;
    }
  }
  CHECK(violations <= 3);
}

TEST_CASE("ks rejects empty input") {
  CHECK_THROWS_AS(ks_distance(std::vector<double>{}, [](double) { return 0.5; }),
                  std::invalid_argument);
}

TEST_CASE("data from the fitted law has thinning index near one") {
  const auto values = exponential_draws(100000, 2.0, 9);
  ExponentialFit fit;
  fit.temperature = 2.0;
  fit.window_lo = 0.0;
  fit.window_hi = 5.0;
  const double index = tail_thinning_index(values, fit, 7.0);
  CHECK(index == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("an empty region beyond the probe gives index zero") {
  RngStream rng(31);
  std::vector<double> values;
  for (int i = 0; i < 1000; ++i) {
    values.push_back(rng.uniform(0.0, 6.0));
  }
  ExponentialFit fit;
  fit.temperature = 1.5;
  fit.window_lo = 0.0;
  fit.window_hi = 5.0;
  CHECK(tail_thinning_index(values, fit, 7.0) == 0.0);
}

TEST_CASE("the probe must lie beyond the fit window") {
  const std::vector<double> values(12, 1.0);
  ExponentialFit fit;
  fit.temperature = 1.0;
  fit.window_lo = 0.0;
  fit.window_hi = 5.0;
  CHECK_THROWS_AS(tail_thinning_index(values, fit, 5.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(tail_thinning_index(values, fit, 4.0),
                  std::invalid_argument);
}

TEST_CASE("doubling the scale doubles T and leaves alpha alone") {
  const auto values = exponential_draws(5000, 1.3, 12);
  std::vector<double> doubled;
  doubled.reserve(values.size());
  for (double v : values) {
    doubled.push_back(2.0 * v);
  }
  const ExponentialFit base = fit_exponential(values, 0.25, 4.0);
  const ExponentialFit scaled = fit_exponential(doubled, 0.5, 8.0);
  CHECK(scaled.temperature == 2.0 * base.temperature);  // exact: c = 2
  CHECK(scaled.r_squared_loglinear ==
        doctest::Approx(base.r_squared_loglinear).epsilon(1e-12));
  const ParetoFit hill_base = fit_pareto_hill(values, 1.0);
  const ParetoFit hill_scaled = fit_pareto_hill(doubled, 2.0);
  CHECK(hill_scaled.alpha == hill_base.alpha);  // exact: ratios unchanged
  CHECK(hill_scaled.n_tail == hill_base.n_tail);
}
