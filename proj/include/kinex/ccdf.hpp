#ifndef KINEX_CCDF_HPP
#define KINEX_CCDF_HPP

#include <span>
#include <utility>
#include <vector>

namespace kinex {

// Empirical complementary CDF with the inclusive convention
// C(x) = #{v >= x} / n, the standard one for power-law tail plots.
class Ccdf {
 public:
  explicit Ccdf(std::vector<double> values);  // throws on empty input

  double operator()(double x) const;
  std::size_t size() const { return sorted_.size(); }
  const std::vector<double>& sorted() const { return sorted_; }

  // (value, C(value)) over the sorted unique sample values; starts at 1.
  std::vector<std::pair<double, double>> points() const;

 private:
  std::vector<double> sorted_;
};

Ccdf make_ccdf(std::span<const double> values);

}  // namespace kinex

#endif  // KINEX_CCDF_HPP
