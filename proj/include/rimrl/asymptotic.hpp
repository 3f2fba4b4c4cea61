#pragma once

#include "rimrl/statistic.hpp"

namespace rimrl {

/// Limiting null variance of sqrt(n) * statistic. Some earlier work on this
/// statistic used 7/48; 1/12 is the correct value.
inline constexpr double kNullAsymptoticVariance = 1.0 / 12.0;

struct AsymptoticReport {
  StatisticValue statistic;
  double z = 0.0;
  double p_value = 0.5;
  double alpha = 0.05;
  double critical_z = 0.0;
  bool reject = false;
};

/// Large-sample test: z = sqrt(12 n) * delta_star, reject when z > Z_alpha.
AsymptoticReport asymptotic_test(const Sample& sample, double alpha);

/// Plug-in estimate of the asymptotic variance of sqrt(n) * delta (4 sigma_1^2):
/// the sample variance over observations of
///   psi(x) = 2 x Fbar_n(x) + 2 int_0^x y dF_n(y) - x / 2.
/// Diagnostic only; the test itself relies on the pivotal 1/12.
double influence_variance(const Sample& sample);

}  // namespace rimrl
