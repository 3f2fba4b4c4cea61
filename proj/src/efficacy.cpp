#include "rimrl/efficacy.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <string>

#include "rimrl/asymptotic.hpp"
#include "rimrl/censored.hpp"
#include "rimrl/error.hpp"
#include "rimrl/parallel.hpp"

namespace rimrl {

namespace {

constexpr double kQuadratureTolerance = 1e-10;
// Integrate up to the point where the cumulative hazard reaches this value,
// i.e. Fbar(U) ~ 4e-18, then add the tail analytically.
constexpr double kTruncationHazard = 40.0;

std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void require_alternative(FamilyKind kind) {
  if (kind != FamilyKind::Weibull && kind != FamilyKind::LinearFailureRate &&
      kind != FamilyKind::Makeham) {
    throw Error(ErrorKind::InvalidConfig, std::string("no alternative family '") +
                                              std::string(to_string(kind)) + "'");
  }
}

// [0, 1] goes to tanh-sinh, which copes with the x^a log x behaviour of the
// Weibull derivative at the origin; the smooth remainder to Gauss-Kronrod.
template <class F>
double integrate(F&& f, double upper, const char* what) {
  const double split = std::min(1.0, upper);
  double head_error = 0.0;
  double tail_error = 0.0;
  boost::math::quadrature::tanh_sinh<double> head_rule;
  const double head = head_rule.integrate(f, 0.0, split, 1e-13, &head_error);
  double tail = 0.0;
  if (upper > split) {
    tail = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, split, upper, 15,
                                                                         1e-14, &tail_error);
  }
  const double value = head + tail;
  const double error = std::abs(head_error * head) + tail_error;
  if (!std::isfinite(value) || error > kQuadratureTolerance) {
    throw Error(ErrorKind::Numeric, std::string(what) + ": quadrature error estimate " +
                                        fmt_g(error) + " over [0, " + fmt_g(upper) + "]");
  }
  return value;
}

// int_0^inf Fbar(x)^power dx.
double survival_moment(const FamilySpec& f, int power) {
  f.validate();
  if (!f.is_lifetime()) throw Error(ErrorKind::Domain, "needs a lifetime family");
  const double upper = inverse_cumulative_hazard(f, kTruncationHazard);
  const double body = integrate(
      [&](double x) { return std::pow(survival(f, x), power); }, upper, "survival integral");
  // Past U the hazard is at least hazard(U) for these families, so the tail
  // behaves like an exponential with that rate.
  const double tail = std::pow(survival(f, upper), power) / (power * hazard(f, upper));
  return body + tail;
}

struct Derivatives {
  double w_prime;
  double mean_prime;
};

Derivatives finite_difference(FamilyKind kind, double lambda0) {
  const double h = kDerivativeStep;
  auto w = [&](double l) { return w_functional(kind, l); };
  auto mu = [&](double l) { return mean_functional(kind, l); };
  if (kind == FamilyKind::Weibull) {
    return {(w(lambda0 + h) - w(lambda0 - h)) / (2.0 * h),
            (mu(lambda0 + h) - mu(lambda0 - h)) / (2.0 * h)};
  }
  // lambda < 0 is outside the family: second-order forward stencil.
  return {(-3.0 * w(lambda0) + 4.0 * w(lambda0 + h) - w(lambda0 + 2.0 * h)) / (2.0 * h),
          (-3.0 * mu(lambda0) + 4.0 * mu(lambda0 + h) - mu(lambda0 + 2.0 * h)) / (2.0 * h)};
}

Derivatives integrand_derivative(FamilyKind kind, double lambda0) {
  const FamilySpec f{kind, lambda0, 0.0};
  const double upper = inverse_cumulative_hazard(f, kTruncationHazard);
  const double w_prime = integrate(
      [&](double x) { return 2.0 * survival(f, x) * survival_lambda_derivative(f, x); }, upper,
      "W derivative");
  const double mean_prime = integrate(
      [&](double x) { return survival_lambda_derivative(f, x); }, upper, "mean derivative");
  return {w_prime, mean_prime};
}

}  // namespace

double w_functional(FamilyKind kind, double lambda) {
  return survival_moment(FamilySpec{kind, lambda, 0.0}, 2);
}

double mean_functional(FamilyKind kind, double lambda) {
  return survival_moment(FamilySpec{kind, lambda, 0.0}, 1);
}

double survival_lambda_derivative(const FamilySpec& f, double x) {
  const double s = survival(f, x);
  switch (f.kind) {
    case FamilyKind::Exponential: return -x * s;
    case FamilyKind::Weibull: return x > 0.0 ? -std::pow(x, f.lambda) * std::log(x) * s : 0.0;
    case FamilyKind::LinearFailureRate: return -0.5 * x * x * s;
    case FamilyKind::Makeham: return -(std::expm1(-x) + x) * s;
    case FamilyKind::Logistic: break;
  }
  throw Error(ErrorKind::Domain, "lambda derivative is defined for lifetime families only");
}

double null_parameter(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::Weibull: return 1.0;
    case FamilyKind::LinearFailureRate:
    case FamilyKind::Makeham: return 0.0;
    default: break;
  }
  throw Error(ErrorKind::InvalidConfig, std::string("no null parameter for '") +
                                            std::string(to_string(kind)) + "'");
}

EfficacyResult pae(FamilyKind kind, DerivativeRoute route) {
  require_alternative(kind);
  EfficacyResult out;
  out.family = kind;
  out.lambda0 = null_parameter(kind);
  const Derivatives d = route == DerivativeRoute::FiniteDifference
                            ? finite_difference(kind, out.lambda0)
                            : integrand_derivative(kind, out.lambda0);
  out.w_prime = d.w_prime;
  out.mean_prime = d.mean_prime;
  const double w0 = w_functional(kind, out.lambda0);
  out.pae = std::sqrt(12.0) * std::abs(d.w_prime - w0 * d.mean_prime);
  return out;
}

AreResult are_censored(const std::optional<FamilySpec>& censoring, double null_rate,
                       const AreOptions& options) {
  if (!(null_rate > 0.0)) throw Error(ErrorKind::InvalidConfig, "null rate must be positive");
  if (options.sample_size < 2) throw Error(ErrorKind::InvalidConfig, "sample size must be >= 2");
  if (options.replicates < 2) throw Error(ErrorKind::InvalidConfig, "need at least 2 replicates");
  if (censoring) censoring->validate();
  const FamilySpec lifetime = FamilySpec::exponential(null_rate);
  const std::size_t n = options.sample_size;
  const double root_n = std::sqrt(static_cast<double>(n));

  struct Outcome {
    double scaled_statistic = 0.0;
    double censored_fraction = 0.0;
    bool ok = false;
  };
  std::vector<Outcome> outcomes(options.replicates);
  parallel_for(options.replicates, [&](std::size_t r) {
    RngStream rng(options.master_seed, r);
    std::vector<CensoredRecord> records(n);
    std::size_t censored = 0;
    for (auto& rec : records) {
      const double x = quantile(lifetime, rng.uniform());
      const double c = censoring ? std::max(0.0, quantile(*censoring, rng.uniform()))
                                 : std::numeric_limits<double>::infinity();
      rec.event = x <= c;
      rec.time = rec.event ? x : c;
      censored += rec.event ? 0 : 1;
    }
    Outcome& o = outcomes[r];
    o.censored_fraction = static_cast<double>(censored) / static_cast<double>(n);
    try {
      const IpcwStatistic s = ipcw_statistic(CensoredSample(std::move(records)));
      o.scaled_statistic = root_n * s.delta_c_star();
      o.ok = std::isfinite(o.scaled_statistic);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::UnestimableTail && e.kind() != ErrorKind::DegenerateSample &&
          e.kind() != ErrorKind::InvalidSampleSize) {
        throw;
      }
    }
  });

  AreResult out;
  std::vector<double> values;
  values.reserve(outcomes.size());
  double fraction = 0.0;
  for (const auto& o : outcomes) {
    fraction += o.censored_fraction;
    if (o.ok) {
      values.push_back(o.scaled_statistic);
    } else {
      ++out.failures;
    }
  }
  out.replicates = options.replicates;
  out.censored_fraction = fraction / static_cast<double>(outcomes.size());
  if (static_cast<double>(out.failures) > 0.01 * static_cast<double>(options.replicates) ||
      values.size() < 2) {
    throw Error(ErrorKind::Numeric, std::to_string(out.failures) + " of " +
                                        std::to_string(options.replicates) +
                                        " replicates could not be evaluated");
  }

  const double m = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / m;
  double m2 = 0.0;
  double m4 = 0.0;
  for (double v : values) {
    const double d2 = (v - mean) * (v - mean);
    m2 += d2;
    m4 += d2 * d2;
  }
  const double variance = m2 / (m - 1.0);
  m4 /= m;
  const double variance_se = std::sqrt(std::max(0.0, m4 - variance * variance) / m);
  out.statistic_variance = variance;
  out.are = kNullAsymptoticVariance / variance;
  out.standard_error = out.are * variance_se / variance;
  return out;
}

}  // namespace rimrl
