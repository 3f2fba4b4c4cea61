#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rimrl {

struct CensoredRecord {
  double time = 0.0;
  bool event = true;  // false: right-censored at `time`
};

/// Right-censored lifetimes. Requires n >= 2, finite nonnegative times and at
/// least two events.
class CensoredSample {
 public:
  explicit CensoredSample(std::vector<CensoredRecord> records);

  std::span<const CensoredRecord> records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }
  std::size_t event_count() const noexcept;

  CensoredSample scaled(double factor) const;

 private:
  std::vector<CensoredRecord> records_;
};

/// Right-continuous nonincreasing step function starting at 1.
class StepSurvival {
 public:
  StepSurvival() = default;
  StepSurvival(std::vector<double> jump_times, std::vector<double> values);

  std::span<const double> jump_times() const noexcept { return jump_times_; }
  std::span<const double> values() const noexcept { return values_; }

  double value_at(double t) const noexcept;
  /// Limit from the left, S(t-).
  double value_at_minus(double t) const noexcept;

 private:
  std::vector<double> jump_times_;
  std::vector<double> values_;
};

/// Product-limit estimate of the censoring survival K_c, with censoring as
/// the event of interest. At tied times, events are taken to occur first, so
/// units failing at t are not at risk of being censored at t.
StepSurvival km_censoring(const CensoredSample& sample);

struct IpcwStatistic {
  double delta_c = 0.0;
  double mean_c = 0.0;
  double delta_c_star() const noexcept { return delta_c / mean_c; }
};

/// Inverse-probability-of-censoring weighted U-statistic and mean, weights
/// delta_i / K(y_i-). Throws Error(UnestimableTail) when an event has zero
/// weight denominator.
IpcwStatistic ipcw_statistic(const CensoredSample& sample);

struct CensoredVariance {
  /// Empirical variance of 2 * (IPCW projection + censoring-martingale
  /// correction) across records; estimates 4 sigma_1c^2.
  double influence_variance = 0.0;
  /// influence_variance / mean_c^2: variance of sqrt(n) * delta_c_star.
  double statistic_variance = 0.0;
  double mean_c = 0.0;
};

CensoredVariance censored_variance(const CensoredSample& sample);

struct CensoredReport {
  double delta_c = 0.0;
  double mean_c = 0.0;
  double delta_c_star = 0.0;
  double sigma_hat = 0.0;
  double z = 0.0;
  double p_value = 0.5;
  double alpha = 0.05;
  double critical_z = 0.0;
  bool reject = false;
};

/// Rejects when sqrt(n) delta_c_star / sigma_hat >= Z_alpha.
CensoredReport censored_test(const CensoredSample& sample, double alpha);

}  // namespace rimrl
