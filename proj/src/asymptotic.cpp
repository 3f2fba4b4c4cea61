#include "rimrl/asymptotic.hpp"

#include <cmath>

#include "rimrl/error.hpp"
#include "rimrl/normal.hpp"
#include "rimrl/summation.hpp"

namespace rimrl {

AsymptoticReport asymptotic_test(const Sample& sample, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorKind::InvalidLevel, "significance level must lie in (0, 1)");
  }
  AsymptoticReport report;
  report.statistic = statistic_spacings(sample);
  report.alpha = alpha;
  report.z = std::sqrt(12.0 * static_cast<double>(sample.size())) * report.statistic.delta_star;
  report.p_value = normal_sf(report.z);
  report.critical_z = normal_upper_quantile(alpha);
  report.reject = report.z > report.critical_z;
  return report;
}

double influence_variance(const Sample& sample) {
  const std::vector<double> x = sample.sorted();
  const std::size_t n = x.size();
  const double nd = static_cast<double>(n);

  // Group ties: every member of a tie block sees the same Fbar_n and the same
  // partial integral, both taken with y <= x inclusive.
  std::vector<double> psi(n);
  double prefix = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    double block = 0.0;
    while (j < n && x[j] == x[i]) block += x[j++];
    prefix += block;
    const double fbar = static_cast<double>(n - j) / nd;
    const double value = 2.0 * x[i] * fbar + 2.0 * prefix / nd - 0.5 * x[i];
    for (std::size_t k = i; k < j; ++k) psi[k] = value;
    i = j;
  }

  CompensatedSum total;
  for (double v : psi) total += v;
  const double mean = total.value() / nd;
  CompensatedSum squares;
  for (double v : psi) squares += (v - mean) * (v - mean);
  return squares.value() / (nd - 1.0);
}

}  // namespace rimrl
