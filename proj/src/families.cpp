#include "rimrl/families.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "rimrl/error.hpp"

namespace rimrl {

namespace {

constexpr double kMakehamTolerance = 1e-12;
constexpr int kMakehamMaxIterations = 100;

void require_lifetime_argument(const FamilySpec& f, double x) {
  if (f.is_lifetime() && x < 0.0) {
    throw Error(ErrorKind::Domain, "lifetime families are supported on x >= 0");
  }
  if (std::isnan(x)) throw Error(ErrorKind::Domain, "argument is NaN");
}

// Root of x + a (e^-x + x - 1) = target. The left side is increasing and
// convex-adjacent; Newton from the exponential quantile, falling back to
// bisection whenever a step leaves the bracket.
double makeham_inverse_hazard(double a, double target) {
  if (target == 0.0) return 0.0;
  double lo = target / (1.0 + a);  // H(x) <= (1 + a) x
  double hi = target;              // H(x) >= x
  double x = target;
  for (int it = 0; it < kMakehamMaxIterations; ++it) {
    const double em = std::exp(-x);
    const double h = x + a * (em + x - 1.0) - target;
    if (h > 0.0) {
      hi = x;
    } else {
      lo = x;
    }
    const double slope = 1.0 + a * (1.0 - em);
    double next = x - h / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= kMakehamTolerance * std::max(1.0, x)) return next;
    x = next;
  }
  throw Error(ErrorKind::Numeric, "Makeham inversion did not converge");
}

}  // namespace

std::string_view to_string(FamilyKind kind) noexcept {
  switch (kind) {
    case FamilyKind::Exponential: return "exponential";
    case FamilyKind::Weibull: return "weibull";
    case FamilyKind::LinearFailureRate: return "lfr";
    case FamilyKind::Makeham: return "makeham";
    case FamilyKind::Logistic: return "logistic";
  }
  return "unknown";
}

std::optional<FamilyKind> parse_family(std::string_view name) {
  std::string key(name);
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (key == "exponential" || key == "exp") return FamilyKind::Exponential;
  if (key == "weibull") return FamilyKind::Weibull;
  if (key == "lfr" || key == "linear-failure-rate" || key == "linearfailurerate")
    return FamilyKind::LinearFailureRate;
  if (key == "makeham") return FamilyKind::Makeham;
  if (key == "logistic") return FamilyKind::Logistic;
  return std::nullopt;
}

void FamilySpec::validate() const {
  const bool ok = [&] {
    if (!std::isfinite(lambda)) return false;
    switch (kind) {
      case FamilyKind::Exponential:
      case FamilyKind::Weibull:
      case FamilyKind::Logistic: return lambda > 0.0 && std::isfinite(location);
      case FamilyKind::LinearFailureRate:
      case FamilyKind::Makeham: return lambda >= 0.0;
    }
    return false;
  }();
  if (!ok) throw Error(ErrorKind::InvalidConfig, "invalid parameter for " + describe());
}

bool FamilySpec::is_exponential_null() const noexcept {
  switch (kind) {
    case FamilyKind::Exponential: return true;
    case FamilyKind::Weibull: return lambda == 1.0;
    case FamilyKind::LinearFailureRate:
    case FamilyKind::Makeham: return lambda == 0.0;
    case FamilyKind::Logistic: return false;
  }
  return false;
}

std::string FamilySpec::describe() const {
  std::ostringstream out;
  out << to_string(kind) << "(lambda=" << lambda;
  if (kind == FamilyKind::Logistic) out << ", location=" << location;
  out << ')';
  return out.str();
}

double cumulative_hazard(const FamilySpec& f, double x) {
  require_lifetime_argument(f, x);
  switch (f.kind) {
    case FamilyKind::Exponential: return f.lambda * x;
    case FamilyKind::Weibull: return std::pow(x, f.lambda);
    case FamilyKind::LinearFailureRate: return x + 0.5 * f.lambda * x * x;
    case FamilyKind::Makeham: return x + f.lambda * (std::expm1(-x) + x);
    case FamilyKind::Logistic: return -std::log(survival(f, x));
  }
  return 0.0;
}

double hazard(const FamilySpec& f, double x) {
  require_lifetime_argument(f, x);
  switch (f.kind) {
    case FamilyKind::Exponential: return f.lambda;
    case FamilyKind::Weibull: return f.lambda * std::pow(x, f.lambda - 1.0);
    case FamilyKind::LinearFailureRate: return 1.0 + f.lambda * x;
    case FamilyKind::Makeham: return 1.0 - f.lambda * std::expm1(-x);
    case FamilyKind::Logistic: {
      const double z = (x - f.location) / f.lambda;
      return 1.0 / (f.lambda * (1.0 + std::exp(-z)));
    }
  }
  return 0.0;
}

double survival(const FamilySpec& f, double x) {
  require_lifetime_argument(f, x);
  if (f.kind == FamilyKind::Logistic) {
    return 1.0 / (1.0 + std::exp((x - f.location) / f.lambda));
  }
  return std::exp(-cumulative_hazard(f, x));
}

double inverse_cumulative_hazard(const FamilySpec& f, double t) {
  if (!f.is_lifetime()) {
    throw Error(ErrorKind::Domain, "cumulative hazard inversion needs a lifetime family");
  }
  if (!(t >= 0.0)) throw Error(ErrorKind::Domain, "cumulative hazard must be >= 0");
  switch (f.kind) {
    case FamilyKind::Exponential: return t / f.lambda;
    case FamilyKind::Weibull: return std::pow(t, 1.0 / f.lambda);
    case FamilyKind::LinearFailureRate: {
      const double a = f.lambda;
      if (a * t < 1e-8) return t - 0.5 * a * t * t;
      // (-1 + sqrt(1 + 2 a t)) / a, rationalised
      return 2.0 * t / (1.0 + std::sqrt(1.0 + 2.0 * a * t));
    }
    case FamilyKind::Makeham: return makeham_inverse_hazard(f.lambda, t);
    case FamilyKind::Logistic: break;
  }
  return 0.0;
}

double quantile(const FamilySpec& f, double u) {
  if (!(u > 0.0 && u < 1.0)) {
    throw Error(ErrorKind::Domain, "quantile needs u in (0, 1)");
  }
  if (f.kind == FamilyKind::Logistic) return f.location + f.lambda * std::log(u / (1.0 - u));
  return inverse_cumulative_hazard(f, -std::log1p(-u));
}

std::vector<double> draw(const FamilySpec& f, RngStream& rng, std::size_t n) {
  f.validate();
  std::vector<double> out(n);
  for (double& x : out) x = quantile(f, rng.uniform());
  return out;
}

Sample sample(const FamilySpec& f, RngStream& rng, std::size_t n) {
  if (!f.is_lifetime()) {
    throw Error(ErrorKind::InvalidConfig, "cannot build a lifetime sample from " + f.describe());
  }
  return Sample(draw(f, rng, n));
}

}  // namespace rimrl
