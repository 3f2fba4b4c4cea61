#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rimrl {

/// Uncensored lifetimes. Construction enforces n >= 2, finite and
/// nonnegative values, and at least one strictly positive value.
class Sample {
 public:
  explicit Sample(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::vector<double> sorted() const;

  /// Returns a copy with every value multiplied by `factor` (> 0).
  Sample scaled(double factor) const;

 private:
  std::vector<double> values_;
};

struct StatisticValue {
  double delta_star = 0.0;  // dimensionless, in [-1/2, 1/2]
  double delta = 0.0;       // time units
  double mean = 0.0;        // time units
};

/// Weights d[i] = (n - 2i + 1) / (2(n - 1)), i = 1..n, stored zero-based.
std::vector<double> coefficients(std::size_t n);

/// Ratio of d-weighted normalized spacings to their total. This is the
/// canonical evaluation path used by the tests.
StatisticValue statistic_spacings(const Sample& sample);

/// Linear combination of order statistics with weights (3n - 4i + 1).
StatisticValue statistic_orderstats(const Sample& sample);

/// Brute-force O(n^2) average of the symmetric kernel
/// min(x, y) - (x + y) / 4 over all pairs. Kept as a cross-check.
StatisticValue statistic_ustat_oracle(const Sample& sample);

/// Symmetric pair kernel shared by the uncensored oracle and the censored
/// statistic.
inline double pair_kernel(double x, double y) noexcept {
  return (x < y ? x : y) - 0.25 * (x + y);
}

}  // namespace rimrl
