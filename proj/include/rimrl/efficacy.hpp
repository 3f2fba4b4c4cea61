#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "rimrl/families.hpp"

namespace rimrl {

/// W(lambda) = E min(X1, X2) = int_0^inf Fbar(x; lambda)^2 dx.
double w_functional(FamilyKind kind, double lambda);

/// mu(lambda) = int_0^inf Fbar(x; lambda) dx.
double mean_functional(FamilyKind kind, double lambda);

/// d Fbar(x; lambda) / d lambda, analytic.
double survival_lambda_derivative(const FamilySpec& f, double x);

/// Parameter value at which the family reduces to the exponential.
double null_parameter(FamilyKind kind);

enum class DerivativeRoute {
  FiniteDifference,     // differentiate the quadrature result
  IntegrandDerivative,  // integrate the analytic lambda-derivative
};

struct EfficacyResult {
  FamilyKind family = FamilyKind::Weibull;
  double lambda0 = 1.0;
  double w_prime = 0.0;
  double mean_prime = 0.0;
  double pae = 0.0;
};

inline constexpr double kDerivativeStep = 1e-5;

/// Pitman asymptotic efficacy sqrt(12) |W'(l0) - W(l0) mu'(l0)| for the
/// Weibull, linear failure rate and Makeham alternatives.
EfficacyResult pae(FamilyKind kind,
                   DerivativeRoute route = DerivativeRoute::FiniteDifference);

struct AreOptions {
  std::size_t sample_size = 400;
  std::size_t replicates = 20000;
  std::uint64_t master_seed = 1;
};

struct AreResult {
  double are = 0.0;
  double standard_error = 0.0;
  /// Monte Carlo variance of sqrt(n) * delta_c_star.
  double statistic_variance = 0.0;
  double censored_fraction = 0.0;
  std::size_t replicates = 0;
  std::size_t failures = 0;
};

/// Relative efficiency (1/12) / sigma_c0^2 of the censored test, with sigma_c0^2
/// estimated by simulation of exponential(null_rate) lifetimes censored by
/// draws from `censoring` (no censoring when empty). Negative censoring
/// draws are clamped to time 0. Throws when more than 1% of replicates fail.
AreResult are_censored(const std::optional<FamilySpec>& censoring, double null_rate,
                       const AreOptions& options = {});

}  // namespace rimrl
