#include "rimrl/statistic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rimrl/error.hpp"
#include "rimrl/summation.hpp"

namespace rimrl {

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) {
    throw Error(ErrorKind::InvalidSampleSize,
                "sample needs at least 2 values, got " + std::to_string(values_.size()));
  }
  bool any_positive = false;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorKind::Domain, "lifetime at index " + std::to_string(i) +
                                         " is negative or not finite");
    }
    any_positive = any_positive || v > 0.0;
  }
  if (!any_positive) {
    throw Error(ErrorKind::DegenerateSample, "all lifetimes are zero; the sample mean is 0");
  }
}

std::vector<double> Sample::sorted() const {
  std::vector<double> out = values_;
  std::sort(out.begin(), out.end());
  return out;
}

Sample Sample::scaled(double factor) const {
  std::vector<double> out = values_;
  for (double& v : out) v *= factor;
  return Sample(std::move(out));
}

std::vector<double> coefficients(std::size_t n) {
  if (n < 2) {
    throw Error(ErrorKind::InvalidSampleSize, "coefficients need n >= 2");
  }
  std::vector<double> d(n);
  const double denom = 2.0 * static_cast<double>(n - 1);
  for (std::size_t i = 1; i <= n; ++i) {
    d[i - 1] = (static_cast<double>(n) - 2.0 * static_cast<double>(i) + 1.0) / denom;
  }
  return d;
}

StatisticValue statistic_spacings(const Sample& sample) {
  const std::vector<double> x = sample.sorted();
  const std::size_t n = x.size();
  const std::vector<double> d = coefficients(n);

  CompensatedSum weighted;
  CompensatedSum total;
  double previous = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double spacing = static_cast<double>(n - i) * (x[i] - previous);
    previous = x[i];
    weighted += d[i] * spacing;
    total += spacing;
  }

  StatisticValue out;
  out.delta_star = weighted.value() / total.value();
  out.mean = total.value() / static_cast<double>(n);
  out.delta = out.delta_star * out.mean;
  return out;
}

StatisticValue statistic_orderstats(const Sample& sample) {
  const std::vector<double> x = sample.sorted();
  const std::size_t n = x.size();
  const double nd = static_cast<double>(n);

  CompensatedSum weighted;
  CompensatedSum total;
  for (std::size_t i = 1; i <= n; ++i) {
    weighted += (3.0 * nd - 4.0 * static_cast<double>(i) + 1.0) * x[i - 1];
    total += x[i - 1];
  }

  StatisticValue out;
  out.delta = weighted.value() / (2.0 * nd * (nd - 1.0));
  out.mean = total.value() / nd;
  out.delta_star = out.delta / out.mean;
  return out;
}

StatisticValue statistic_ustat_oracle(const Sample& sample) {
  const auto x = sample.values();
  const std::size_t n = x.size();
  const double nd = static_cast<double>(n);

  CompensatedSum pairs;
  CompensatedSum total;
  for (std::size_t i = 0; i < n; ++i) {
    total += x[i];
    for (std::size_t j = i + 1; j < n; ++j) pairs += pair_kernel(x[i], x[j]);
  }

  StatisticValue out;
  out.delta = 2.0 * pairs.value() / (nd * (nd - 1.0));
  out.mean = total.value() / nd;
  out.delta_star = out.delta / out.mean;
  return out;
}

}  // namespace rimrl
