#pragma once

namespace rimrl {

double normal_cdf(double z) noexcept;

/// Upper tail 1 - Phi(z), computed without cancellation for large z.
double normal_sf(double z) noexcept;

/// Inverse of normal_cdf for p in (0, 1). Rational approximation followed by
/// one Halley step; absolute error well below 1e-12.
double normal_quantile(double p);

/// Upper-alpha point Z_alpha, i.e. normal_sf(Z_alpha) == alpha.
double normal_upper_quantile(double alpha);

}  // namespace rimrl
