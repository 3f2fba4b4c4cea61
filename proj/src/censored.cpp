#include "rimrl/censored.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rimrl/error.hpp"
#include "rimrl/normal.hpp"
#include "rimrl/statistic.hpp"
#include "rimrl/summation.hpp"

namespace rimrl {

namespace {

// Records ordered by time, events ahead of censorings at equal times.
std::vector<std::size_t> survival_order(std::span<const CensoredRecord> records) {
  std::vector<std::size_t> order(records.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (records[a].time != records[b].time) return records[a].time < records[b].time;
    if (records[a].event != records[b].event) return records[a].event;
    return a < b;
  });
  return order;
}

struct CensoringTime {
  double time;
  double at_risk;     // units still at risk of censoring at `time`
  double censorings;  // censorings at `time`
};

std::vector<CensoringTime> censoring_times(std::span<const CensoredRecord> records,
                                           std::span<const std::size_t> order) {
  std::vector<CensoringTime> out;
  const std::size_t n = order.size();
  for (std::size_t i = 0; i < n;) {
    const double t = records[order[i]].time;
    std::size_t events = 0;
    std::size_t censorings = 0;
    std::size_t j = i;
    for (; j < n && records[order[j]].time == t; ++j) {
      if (records[order[j]].event) {
        ++events;
      } else {
        ++censorings;
      }
    }
    if (censorings > 0) {
      out.push_back({t, static_cast<double>(n - i - events), static_cast<double>(censorings)});
    }
    i = j;
  }
  return out;
}

// Event records in time order with their IPCW weights 1 / K(y-).
struct WeightedEvents {
  std::vector<double> times;
  std::vector<double> weights;
  std::vector<std::size_t> record;  // index into the original records
};

WeightedEvents weighted_events(const CensoredSample& sample, std::span<const std::size_t> order) {
  const auto records = sample.records();
  const StepSurvival k = km_censoring(sample);
  WeightedEvents out;
  for (std::size_t idx : order) {
    if (!records[idx].event) continue;
    const double left_limit = k.value_at_minus(records[idx].time);
    if (!(left_limit > 0.0)) {
      throw Error(ErrorKind::UnestimableTail,
                  "record " + std::to_string(idx) + " (time " +
                      std::to_string(records[idx].time) +
                      ") is an event after the censoring survival estimate reached 0");
    }
    out.times.push_back(records[idx].time);
    out.weights.push_back(1.0 / left_limit);
    out.record.push_back(idx);
  }
  return out;
}

}  // namespace

CensoredSample::CensoredSample(std::vector<CensoredRecord> records)
    : records_(std::move(records)) {
  if (records_.size() < 2) {
    throw Error(ErrorKind::InvalidSampleSize, "censored sample needs at least 2 records");
  }
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const double t = records_[i].time;
    if (!std::isfinite(t) || t < 0.0) {
      throw Error(ErrorKind::Domain,
                  "time at record " + std::to_string(i) + " is negative or not finite");
    }
  }
  if (event_count() < 2) {
    throw Error(ErrorKind::DegenerateSample, "censored sample needs at least 2 events");
  }
}

std::size_t CensoredSample::event_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(records_.begin(), records_.end(), [](const auto& r) { return r.event; }));
}

CensoredSample CensoredSample::scaled(double factor) const {
  std::vector<CensoredRecord> out = records_;
  for (auto& r : out) r.time *= factor;
  return CensoredSample(std::move(out));
}

StepSurvival::StepSurvival(std::vector<double> jump_times, std::vector<double> values)
    : jump_times_(std::move(jump_times)), values_(std::move(values)) {
  if (jump_times_.size() != values_.size()) {
    throw Error(ErrorKind::InvalidConfig, "step function needs one value per jump");
  }
}

double StepSurvival::value_at(double t) const noexcept {
  const auto it = std::upper_bound(jump_times_.begin(), jump_times_.end(), t);
  if (it == jump_times_.begin()) return 1.0;
  return values_[static_cast<std::size_t>(it - jump_times_.begin()) - 1];
}

double StepSurvival::value_at_minus(double t) const noexcept {
  const auto it = std::lower_bound(jump_times_.begin(), jump_times_.end(), t);
  if (it == jump_times_.begin()) return 1.0;
  return values_[static_cast<std::size_t>(it - jump_times_.begin()) - 1];
}

StepSurvival km_censoring(const CensoredSample& sample) {
  const auto records = sample.records();
  const auto order = survival_order(records);
  std::vector<double> times;
  std::vector<double> values;
  double k = 1.0;
  for (const auto& c : censoring_times(records, order)) {
    k *= 1.0 - c.censorings / c.at_risk;
    times.push_back(c.time);
    values.push_back(k);
  }
  return StepSurvival(std::move(times), std::move(values));
}

IpcwStatistic ipcw_statistic(const CensoredSample& sample) {
  const auto records = sample.records();
  const auto order = survival_order(records);
  const WeightedEvents ev = weighted_events(sample, order);
  const double nd = static_cast<double>(sample.size());

  // Sum over event pairs k < l (time order) of w_k w_l h(y_k, y_l), using
  // min(y_k, y_l) = y_k and sum over pairs of (y_k + y_l) = sum_k y_k (W - w_k).
  double total_weight = 0.0;
  for (double w : ev.weights) total_weight += w;
  CompensatedSum pairs;
  CompensatedSum weighted_times;
  double later_weight = total_weight;
  for (std::size_t k = 0; k < ev.times.size(); ++k) {
    const double wy = ev.weights[k] * ev.times[k];
    later_weight -= ev.weights[k];
    pairs += wy * (later_weight - 0.25 * (total_weight - ev.weights[k]));
    weighted_times += wy;
  }

  IpcwStatistic out;
  out.delta_c = 2.0 * pairs.value() / (nd * (nd - 1.0));
  out.mean_c = weighted_times.value() / nd;
  return out;
}

CensoredVariance censored_variance(const CensoredSample& sample) {
  const auto records = sample.records();
  const auto order = survival_order(records);
  const WeightedEvents ev = weighted_events(sample, order);
  const std::size_t n = sample.size();
  const double nd = static_cast<double>(n);
  const std::size_t m = ev.times.size();

  // Prefix sums over events for h1(x) = (1/n) sum_j w_j h(x, y_j).
  std::vector<double> prefix_wy(m + 1, 0.0);
  std::vector<double> prefix_w(m + 1, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    prefix_wy[k + 1] = prefix_wy[k] + ev.weights[k] * ev.times[k];
    prefix_w[k + 1] = prefix_w[k] + ev.weights[k];
  }
  const double total_w = prefix_w[m];
  const double total_wy = prefix_wy[m];
  auto h1 = [&](double x) {
    const auto upto = static_cast<std::size_t>(
        std::upper_bound(ev.times.begin(), ev.times.end(), x) - ev.times.begin());
    const double min_sum = prefix_wy[upto] + x * (total_w - prefix_w[upto]);
    return (min_sum - 0.25 * x * total_w - 0.25 * total_wy) / nd;
  };

  // Projection term w_k h1(y_k) per event, and its suffix sums for w(t).
  std::vector<double> projection(m);
  for (std::size_t k = 0; k < m; ++k) projection[k] = ev.weights[k] * h1(ev.times[k]);
  std::vector<double> suffix(m + 1, 0.0);
  for (std::size_t k = m; k-- > 0;) suffix[k] = suffix[k + 1] + projection[k];

  // w(t) at each censoring time and the running integral of w dLambda_c.
  const auto grid = censoring_times(records, order);
  std::vector<double> w_at(grid.size());
  std::vector<double> cumulative(grid.size());
  double running = 0.0;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const auto after = static_cast<std::size_t>(
        std::upper_bound(ev.times.begin(), ev.times.end(), grid[g].time) - ev.times.begin());
    w_at[g] = suffix[after] / grid[g].at_risk;
    running += w_at[g] * grid[g].censorings / grid[g].at_risk;
    cumulative[g] = running;
  }
  auto grid_upto = [&](double t, bool inclusive) {
    auto cmp_end = inclusive
                       ? std::upper_bound(grid.begin(), grid.end(), t,
                                          [](double v, const CensoringTime& c) { return v < c.time; })
                       : std::lower_bound(grid.begin(), grid.end(), t,
                                          [](const CensoringTime& c, double v) { return c.time < v; });
    return static_cast<std::size_t>(cmp_end - grid.begin());
  };

  std::vector<double> influence(n, 0.0);
  for (std::size_t k = 0; k < m; ++k) influence[ev.record[k]] = projection[k];
  for (std::size_t i = 0; i < n; ++i) {
    const auto& r = records[i];
    // Censored units stay at risk through their own censoring time.
    const std::size_t count = grid_upto(r.time, !r.event);
    double martingale = count > 0 ? -cumulative[count - 1] : 0.0;
    if (!r.event) martingale += w_at[count - 1];
    influence[i] += martingale;
  }

  CompensatedSum total;
  for (double v : influence) total += 2.0 * v;
  const double mean = total.value() / nd;
  CompensatedSum squares;
  for (double v : influence) squares += (2.0 * v - mean) * (2.0 * v - mean);

  CensoredVariance out;
  out.influence_variance = squares.value() / (nd - 1.0);
  out.mean_c = total_wy / nd;
  out.statistic_variance = out.influence_variance / (out.mean_c * out.mean_c);
  return out;
}

CensoredReport censored_test(const CensoredSample& sample, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorKind::InvalidLevel, "significance level must lie in (0, 1)");
  }
  const IpcwStatistic stat = ipcw_statistic(sample);
  const CensoredVariance var = censored_variance(sample);

  CensoredReport report;
  report.delta_c = stat.delta_c;
  report.mean_c = stat.mean_c;
  report.delta_c_star = stat.delta_c_star();
  report.sigma_hat = std::sqrt(var.statistic_variance);
  report.alpha = alpha;
  report.critical_z = normal_upper_quantile(alpha);
  if (report.delta_c_star == 0.0) {
    report.z = 0.0;
  } else if (report.sigma_hat > 0.0) {
    report.z = std::sqrt(static_cast<double>(sample.size())) * report.delta_c_star / report.sigma_hat;
  } else {
    throw Error(ErrorKind::Numeric, "estimated variance of the censored statistic is zero");
  }
  report.p_value = normal_sf(report.z);
  report.reject = report.z >= report.critical_z;
  return report;
}

}  // namespace rimrl
