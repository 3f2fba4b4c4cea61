#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rimrl/rng.hpp"
#include "rimrl/statistic.hpp"

namespace rimrl {

enum class FamilyKind { Exponential, Weibull, LinearFailureRate, Makeham, Logistic };

std::string_view to_string(FamilyKind kind) noexcept;
std::optional<FamilyKind> parse_family(std::string_view name);

/// Parametric family used to generate alternatives and censoring times.
///
///   Exponential        Fbar(x) = exp(-lambda x)                    lambda > 0
///   Weibull            Fbar(x) = exp(-x^lambda)                    lambda > 0
///   LinearFailureRate  Fbar(x) = exp(-x - lambda x^2 / 2)          lambda >= 0
///   Makeham            Fbar(x) = exp(-x - lambda (e^-x + x - 1))   lambda >= 0
///   Logistic           F(x) = 1 / (1 + exp(-(x - location) / lambda)), lambda > 0
///
/// Weibull(1), LinearFailureRate(0) and Makeham(0) are the standard
/// exponential. Weibull shapes below 1 are accepted because efficacy
/// derivatives are taken by central differences around 1.
struct FamilySpec {
  FamilyKind kind = FamilyKind::Exponential;
  double lambda = 1.0;
  double location = 0.0;

  static FamilySpec exponential(double rate = 1.0) { return {FamilyKind::Exponential, rate, 0.0}; }
  static FamilySpec weibull(double shape) { return {FamilyKind::Weibull, shape, 0.0}; }
  static FamilySpec linear_failure_rate(double a) { return {FamilyKind::LinearFailureRate, a, 0.0}; }
  static FamilySpec makeham(double a) { return {FamilyKind::Makeham, a, 0.0}; }
  static FamilySpec logistic(double scale, double location = 0.0) {
    return {FamilyKind::Logistic, scale, location};
  }

  /// Throws Error(InvalidConfig) when the parameter is out of range.
  void validate() const;

  bool is_lifetime() const noexcept { return kind != FamilyKind::Logistic; }

  /// True for the members that coincide with an exponential law.
  bool is_exponential_null() const noexcept;

  std::string describe() const;
};

double survival(const FamilySpec& f, double x);
double cumulative_hazard(const FamilySpec& f, double x);
double hazard(const FamilySpec& f, double x);

/// Inverse of cumulative_hazard for lifetime families, t >= 0.
double inverse_cumulative_hazard(const FamilySpec& f, double t);

/// Inverse CDF for u in (0, 1).
double quantile(const FamilySpec& f, double u);

/// n draws by inversion of uniforms taken from `rng`.
std::vector<double> draw(const FamilySpec& f, RngStream& rng, std::size_t n);

/// Lifetime sample of size n; `f` must be a lifetime family.
Sample sample(const FamilySpec& f, RngStream& rng, std::size_t n);

}  // namespace rimrl
