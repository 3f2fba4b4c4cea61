#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "rimrl/families.hpp"

namespace rimrl {

enum class TestKind { Exact, Asymptotic, Censored };

std::string_view to_string(TestKind kind) noexcept;
std::optional<TestKind> parse_test_kind(std::string_view name);

struct ExperimentConfig {
  TestKind test = TestKind::Asymptotic;
  FamilySpec family = FamilySpec::exponential();
  std::size_t n = 100;
  std::size_t replications = 10000;
  std::vector<double> alpha_levels{0.05, 0.01};
  std::uint64_t master_seed = 1;
  /// Censoring-time law for TestKind::Censored; empty means no censoring.
  std::optional<FamilySpec> censoring;

  void validate() const;
};

struct LevelResult {
  double alpha = 0.0;
  double rejection_rate = 0.0;
  double standard_error = 0.0;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<LevelResult> levels;
  std::size_t completed = 0;
  std::size_t failures = 0;
  /// Mean fraction of censored records (0 for uncensored tests).
  double censored_fraction = 0.0;

  const LevelResult& at(double alpha) const;
};

/// Replicate r draws from RngStream(master_seed, r), so results do not depend
/// on the number of worker threads.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// run_experiment restricted to exponential (null) families.
ExperimentResult type1_error(const ExperimentConfig& config);

/// run_experiment restricted to non-null families.
ExperimentResult power(const ExperimentConfig& config);

std::vector<ExperimentResult> run_suite(std::span<const ExperimentConfig> configs);

/// Configurations laid out like the published tables.
std::vector<ExperimentConfig> type1_table_configs(std::size_t replications,
                                                  std::uint64_t seed);
std::vector<ExperimentConfig> power_table_configs(FamilyKind kind, std::size_t replications,
                                                  std::uint64_t seed);
std::vector<std::size_t> power_table_sizes();
std::vector<double> power_table_lambdas(FamilyKind kind);

// Report rendering. One row per (n, lambda, level).
std::string to_csv(std::span<const ExperimentResult> results);
nlohmann::json to_json(std::span<const ExperimentResult> results);
/// Grid with rows n and columns (lambda, level), as in the published tables.
std::string to_grid(std::span<const ExperimentResult> results);

}  // namespace rimrl
