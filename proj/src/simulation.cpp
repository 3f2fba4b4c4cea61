#include "rimrl/simulation.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <sstream>

#include "rimrl/censored.hpp"
#include "rimrl/error.hpp"
#include "rimrl/exact_null.hpp"
#include "rimrl/normal.hpp"
#include "rimrl/parallel.hpp"
#include "rimrl/statistic.hpp"

namespace rimrl {

namespace {

constexpr std::size_t kMaxLevels = 32;

struct Outcome {
  std::uint32_t rejected = 0;  // bit k set: rejected at level k
  double censored_fraction = 0.0;
  bool ok = false;
};

Outcome run_replicate(const ExperimentConfig& config, std::span<const double> thresholds,
                      std::size_t replicate) {
  RngStream rng(config.master_seed, replicate);
  Outcome out;
  const std::size_t n = config.n;

  double score = 0.0;  // compared against each threshold with `>` or `>=`
  if (config.test == TestKind::Censored) {
    std::vector<CensoredRecord> records(n);
    std::size_t censored = 0;
    for (auto& rec : records) {
      const double x = quantile(config.family, rng.uniform());
      const double c = config.censoring
                           ? std::max(0.0, quantile(*config.censoring, rng.uniform()))
                           : std::numeric_limits<double>::infinity();
      rec.event = x <= c;
      rec.time = rec.event ? x : c;
      censored += rec.event ? 0 : 1;
    }
    out.censored_fraction = static_cast<double>(censored) / static_cast<double>(n);
    try {
      score = censored_test(CensoredSample(std::move(records)), config.alpha_levels.front()).z;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::UnestimableTail || e.kind() == ErrorKind::DegenerateSample ||
          e.kind() == ErrorKind::InvalidSampleSize || e.kind() == ErrorKind::Numeric) {
        return out;
      }
      throw;
    }
    for (std::size_t k = 0; k < thresholds.size(); ++k) {
      if (score >= thresholds[k]) out.rejected |= 1u << k;
    }
    out.ok = true;
    return out;
  }

  const Sample s = sample(config.family, rng, n);
  const double delta_star = statistic_spacings(s).delta_star;
  score = config.test == TestKind::Exact
              ? delta_star
              : std::sqrt(12.0 * static_cast<double>(n)) * delta_star;
  for (std::size_t k = 0; k < thresholds.size(); ++k) {
    if (score > thresholds[k]) out.rejected |= 1u << k;
  }
  out.ok = true;
  return out;
}

std::string censoring_label(const ExperimentConfig& c) {
  return c.censoring ? c.censoring->describe() : std::string("none");
}

}  // namespace

std::string_view to_string(TestKind kind) noexcept {
  switch (kind) {
    case TestKind::Exact: return "exact";
    case TestKind::Asymptotic: return "asymptotic";
    case TestKind::Censored: return "censored";
  }
  return "unknown";
}

std::optional<TestKind> parse_test_kind(std::string_view name) {
  if (name == "exact") return TestKind::Exact;
  if (name == "asymptotic") return TestKind::Asymptotic;
  if (name == "censored") return TestKind::Censored;
  return std::nullopt;
}

void ExperimentConfig::validate() const {
  if (n < 2) throw Error(ErrorKind::InvalidConfig, "experiment needs n >= 2");
  if (replications < 100) throw Error(ErrorKind::InvalidConfig, "experiment needs >= 100 replications");
  if (alpha_levels.empty() || alpha_levels.size() > kMaxLevels) {
    throw Error(ErrorKind::InvalidConfig, "experiment needs between 1 and 32 levels");
  }
  for (double a : alpha_levels) {
    if (!(a > 0.0 && a < 1.0)) throw Error(ErrorKind::InvalidLevel, "levels must lie in (0, 1)");
  }
  family.validate();
  if (!family.is_lifetime()) {
    throw Error(ErrorKind::InvalidConfig, "lifetimes cannot follow " + family.describe());
  }
  if (censoring) {
    if (test != TestKind::Censored) {
      throw Error(ErrorKind::InvalidConfig, "censoring requires the censored test");
    }
    censoring->validate();
  }
}

const LevelResult& ExperimentResult::at(double alpha) const {
  for (const auto& l : levels) {
    if (l.alpha == alpha) return l;
  }
  throw Error(ErrorKind::InvalidLevel, fmt::format("level {} was not simulated", alpha));
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  std::vector<double> thresholds;
  if (config.test == TestKind::Exact) {
    const ExactNull law(config.n);
    for (double a : config.alpha_levels) thresholds.push_back(law.critical_value(a));
  } else {
    for (double a : config.alpha_levels) thresholds.push_back(normal_upper_quantile(a));
  }

  std::vector<Outcome> outcomes(config.replications);
  parallel_for(config.replications, [&](std::size_t r) {
    outcomes[r] = run_replicate(config, thresholds, r);
  });

  ExperimentResult result;
  result.config = config;
  std::vector<std::size_t> rejections(config.alpha_levels.size(), 0);
  double fraction = 0.0;
  for (const auto& o : outcomes) {
    fraction += o.censored_fraction;
    if (!o.ok) {
      ++result.failures;
      continue;
    }
    ++result.completed;
    for (std::size_t k = 0; k < rejections.size(); ++k) {
      if (o.rejected & (1u << k)) ++rejections[k];
    }
  }
  result.censored_fraction = fraction / static_cast<double>(config.replications);
  const double m = static_cast<double>(result.completed);
  for (std::size_t k = 0; k < rejections.size(); ++k) {
    LevelResult level;
    level.alpha = config.alpha_levels[k];
    if (result.completed > 0) {
      level.rejection_rate = static_cast<double>(rejections[k]) / m;
      level.standard_error =
          std::sqrt(level.rejection_rate * (1.0 - level.rejection_rate) / m);
    }
    result.levels.push_back(level);
  }
  return result;
}

ExperimentResult type1_error(const ExperimentConfig& config) {
  if (!config.family.is_exponential_null()) {
    throw Error(ErrorKind::InvalidConfig,
                "type 1 error needs an exponential family, got " + config.family.describe());
  }
  return run_experiment(config);
}

ExperimentResult power(const ExperimentConfig& config) {
  if (config.family.is_exponential_null()) {
    throw Error(ErrorKind::InvalidConfig,
                "power needs a non-exponential alternative, got " + config.family.describe());
  }
  return run_experiment(config);
}

std::vector<ExperimentResult> run_suite(std::span<const ExperimentConfig> configs) {
  std::vector<ExperimentResult> out;
  out.reserve(configs.size());
  for (const auto& c : configs) out.push_back(run_experiment(c));
  return out;
}

std::vector<ExperimentConfig> type1_table_configs(std::size_t replications, std::uint64_t seed) {
  std::vector<ExperimentConfig> out;
  for (std::size_t n = 10; n <= 100; n += 10) {
    ExperimentConfig c;
    c.test = TestKind::Asymptotic;
    c.family = FamilySpec::exponential();
    c.n = n;
    c.replications = replications;
    c.alpha_levels = {0.05, 0.01};
    c.master_seed = seed;
    out.push_back(c);
  }
  return out;
}

std::vector<std::size_t> power_table_sizes() { return {60, 70, 80, 90, 100}; }

std::vector<double> power_table_lambdas(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::Weibull: return {1.2, 1.4, 1.6, 1.8};
    case FamilyKind::LinearFailureRate:
    case FamilyKind::Makeham: return {0.2, 0.4, 0.6, 0.8};
    default: break;
  }
  throw Error(ErrorKind::InvalidConfig, "no published power table for this family");
}

std::vector<ExperimentConfig> power_table_configs(FamilyKind kind, std::size_t replications,
                                                  std::uint64_t seed) {
  std::vector<ExperimentConfig> out;
  for (std::size_t n : power_table_sizes()) {
    for (double lambda : power_table_lambdas(kind)) {
      ExperimentConfig c;
      c.test = TestKind::Asymptotic;
      c.family = FamilySpec{kind, lambda, 0.0};
      c.n = n;
      c.replications = replications;
      c.alpha_levels = {0.05, 0.01};
      c.master_seed = seed;
      out.push_back(c);
    }
  }
  return out;
}

std::string to_csv(std::span<const ExperimentResult> results) {
  std::string out =
      "test,family,lambda,location,censoring,n,replications,seed,alpha,rejection_rate,"
      "standard_error,completed,failures,censored_fraction\n";
  for (const auto& r : results) {
    const auto& c = r.config;
    for (const auto& l : r.levels) {
      out += fmt::format("{},{},{},{},\"{}\",{},{},{},{},{},{},{},{},{}\n", to_string(c.test),
                         to_string(c.family.kind), c.family.lambda, c.family.location,
                         censoring_label(c), c.n, c.replications, c.master_seed, l.alpha,
                         l.rejection_rate, l.standard_error, r.completed, r.failures,
                         r.censored_fraction);
    }
  }
  return out;
}

nlohmann::json to_json(std::span<const ExperimentResult> results) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : results) {
    const auto& c = r.config;
    for (const auto& l : r.levels) {
      nlohmann::json row;
      row["test"] = to_string(c.test);
      row["family"] = to_string(c.family.kind);
      row["lambda"] = c.family.lambda;
      row["location"] = c.family.location;
      row["censoring"] = censoring_label(c);
      row["n"] = c.n;
      row["replications"] = c.replications;
      row["seed"] = c.master_seed;
      row["alpha"] = l.alpha;
      row["rejection_rate"] = l.rejection_rate;
      row["standard_error"] = l.standard_error;
      row["completed"] = r.completed;
      row["failures"] = r.failures;
      row["censored_fraction"] = r.censored_fraction;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string to_grid(std::span<const ExperimentResult> results) {
  if (results.empty()) return {};
  std::vector<std::size_t> sizes;
  std::vector<double> lambdas;
  std::map<std::pair<std::size_t, double>, const ExperimentResult*> cells;
  for (const auto& r : results) {
    if (std::find(sizes.begin(), sizes.end(), r.config.n) == sizes.end()) {
      sizes.push_back(r.config.n);
    }
    if (std::find(lambdas.begin(), lambdas.end(), r.config.family.lambda) == lambdas.end()) {
      lambdas.push_back(r.config.family.lambda);
    }
    cells[{r.config.n, r.config.family.lambda}] = &r;
  }
  const auto& levels = results.front().config.alpha_levels;

  std::ostringstream out;
  out << fmt::format("{:>5}", "n");
  for (double lambda : lambdas) {
    for (double a : levels) {
      out << fmt::format("  {:>17}", fmt::format("l={} a={}", lambda, a));
    }
  }
  out << '\n';
  for (std::size_t n : sizes) {
    out << fmt::format("{:>5}", n);
    for (double lambda : lambdas) {
      const auto it = cells.find({n, lambda});
      for (double a : levels) {
        if (it == cells.end()) {
          out << fmt::format("  {:>17}", "-");
          continue;
        }
        const LevelResult& l = it->second->at(a);
        out << fmt::format("  {:>17}", fmt::format("{:.4f} ({:.4f})", l.rejection_rate,
                                                   l.standard_error));
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace rimrl
