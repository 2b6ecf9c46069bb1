#include <doctest.h>

#include <stdexcept>
#include <utility>
#include <vector>

#include "kinex/demand.hpp"

using kinex::DemandPoint;
using kinex::summarize_demand;

namespace {
using Runs = std::vector<std::pair<double, std::vector<double>>>;
}

TEST_CASE("constant prices summarize to their value with zero spread") {
  const Runs runs{{1.0, {2.0, 2.0, 2.0}}};
  const auto points = summarize_demand(runs);
  REQUIRE(points.size() == 1);
  CHECK(points[0].ratio == 1.0);
  CHECK(points[0].mean_price == 2.0);
  CHECK(points[0].std_price == 0.0);
  CHECK(points[0].n == 3);
}

TEST_CASE("the spread is the population standard deviation") {
  const Runs runs{{1.0, {1.0, 3.0}}};
  const auto points = summarize_demand(runs);
  CHECK(points[0].mean_price == 2.0);
  CHECK(points[0].std_price == 1.0);  // divisor n, not n-1
}

TEST_CASE("identical samples at two ratios give identical summaries") {
  const std::vector<double> samples{0.7, 1.1, 0.9, 1.3};
  const Runs runs{{2.0, samples}, {0.5, samples}};
  const auto points = summarize_demand(runs);
  REQUIRE(points.size() == 2);
  CHECK(points[0].ratio == 0.5);  // sorted by ratio
  CHECK(points[1].ratio == 2.0);
  CHECK(points[0].mean_price == points[1].mean_price);
  CHECK(points[0].std_price == points[1].std_price);
  CHECK(points[0].n == points[1].n);
}

TEST_CASE("rows come back ordered by ratio") {
  const Runs runs{{10.0, {1.0}}, {0.1, {2.0}}, {1.0, {3.0}}};
  const auto points = summarize_demand(runs);
  REQUIRE(points.size() == 3);
  CHECK(points[0].ratio == 0.1);
  CHECK(points[1].ratio == 1.0);
  CHECK(points[2].ratio == 10.0);
}

TEST_CASE("empty input is rejected") {
  CHECK_THROWS_AS(summarize_demand(Runs{}), std::invalid_argument);
  const Runs no_samples{{1.0, {}}};
  CHECK_THROWS_AS(summarize_demand(no_samples), std::invalid_argument);
}
