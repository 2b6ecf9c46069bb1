#include "kinex/reference_models.hpp"

#include <stdexcept>
#include <string>

namespace kinex {

namespace {

void check_epsilon(double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("exchange: epsilon must be in [0, 1]");
  }
}

void check_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    throw std::invalid_argument("exchange: lambda must be in [0, 1)");
  }
}

void check_money(double d_i, double d_j) {
  if (!(d_i >= 0.0) || !(d_j >= 0.0)) {
    throw std::invalid_argument("exchange: money amounts must be >= 0");
  }
}

}  // namespace

std::pair<double, double> dy_exchange(double d_i, double d_j, double epsilon) {
  check_money(d_i, d_j);
  check_epsilon(epsilon);
  const double pool = d_i + d_j;
  return {epsilon * pool, (1.0 - epsilon) * pool};
}

std::pair<double, double> cc_exchange(double d_i, double d_j, double lambda,
                                      double epsilon) {
  check_money(d_i, d_j);
  check_lambda(lambda);
  check_epsilon(epsilon);
  const double pool = d_i + d_j;
  return {lambda * d_i + epsilon * (1.0 - lambda) * pool,
          lambda * d_j + (1.0 - epsilon) * (1.0 - lambda) * pool};
}

ReferenceResult run_reference(std::size_t n, double mean_money,
                              std::uint64_t n_sweeps,
                              const std::vector<std::uint64_t>& snapshot_sweeps,
                              double lambda, RngStream& rng) {
  if (n < 2) {
    throw std::invalid_argument("run_reference: need at least 2 agents");
  }
  if (!(mean_money > 0.0)) {
    throw std::invalid_argument("run_reference: mean_money must be > 0");
  }
  check_lambda(lambda);
  for (std::size_t i = 0; i < snapshot_sweeps.size(); ++i) {
    if (snapshot_sweeps[i] > n_sweeps) {
      throw std::invalid_argument("run_reference: snapshot sweep " +
                                  std::to_string(snapshot_sweeps[i]) +
                                  " exceeds n_sweeps");
    }
    if (i > 0 && snapshot_sweeps[i] <= snapshot_sweeps[i - 1]) {
      throw std::invalid_argument(
          "run_reference: snapshot sweeps must be strictly increasing");
    }
  }

  ReferenceResult result;
  result.population.money.assign(n, mean_money);
  std::vector<double>& money = result.population.money;

  std::size_t next = 0;
  auto capture = [&](std::uint64_t sweep) {
    result.snapshots.push_back({sweep, money});
  };
  if (next < snapshot_sweeps.size() && snapshot_sweeps[next] == 0) {
    capture(0);
    ++next;
  }

  for (std::uint64_t sweep = 1; sweep <= n_sweeps; ++sweep) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t i = static_cast<std::size_t>(rng.uniform_index(n));
      std::size_t j = static_cast<std::size_t>(rng.uniform_index(n - 1));
      if (j >= i) ++j;
      const double epsilon = rng.next_double();
      const auto shares = cc_exchange(money[i], money[j], lambda, epsilon);
      money[i] = shares.first;
      money[j] = shares.second;
      ++result.population.step_count;
    }
    if (next < snapshot_sweeps.size() && snapshot_sweeps[next] == sweep) {
      capture(sweep);
      ++next;
    }
  }
  return result;
}

}  // namespace kinex
