#include "cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <cmath>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "rimrl/asymptotic.hpp"
#include "rimrl/censored.hpp"
#include "rimrl/dataset.hpp"
#include "rimrl/efficacy.hpp"
#include "rimrl/error.hpp"
#include "rimrl/exact_null.hpp"
#include "rimrl/simulation.hpp"
#include "rimrl/statistic.hpp"

namespace rimrl::cli {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

std::string num(double v) { return fmt::format("{:.6g}", v); }

FamilyKind require_family(const std::string& name) {
  const auto kind = parse_family(name);
  if (!kind) throw Error(ErrorKind::InvalidConfig, "unknown family '" + name + "'");
  return *kind;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed, std::ostream& err) {
  if (seed) return *seed;
  std::random_device rd;
  const std::uint64_t chosen = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  err << "seed: " << chosen << '\n';
  return chosen;
}

// ---------------------------------------------------------------- test

struct TestOptions {
  std::string path;
  std::string method = "auto";
  double alpha = 0.05;
  bool censored = false;
  std::string format = "text";
  std::size_t auto_threshold = 200;
};

void emit(const json& payload, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << payload.dump(2) << '\n';
    return;
  }
  if (format == "csv") {
    std::string header;
    std::string row;
    for (const auto& [key, value] : payload.items()) {
      header += (header.empty() ? "" : ",") + key;
      std::string cell;
      if (value.is_number_float()) {
        cell = fmt::format("{}", value.get<double>());
      } else if (value.is_string()) {
        cell = value.get<std::string>();
      } else {
        cell = value.dump();
      }
      row += (row.empty() ? "" : ",") + cell;
    }
    out << header << '\n' << row << '\n';
    return;
  }
  for (const auto& [key, value] : payload.items()) {
    std::string cell;
    if (value.is_number_float()) {
      cell = num(value.get<double>());
    } else if (value.is_string()) {
      cell = value.get<std::string>();
    } else {
      cell = value.dump();
    }
    out << fmt::format("{:<16} {}\n", key, cell);
  }
}

int cmd_test(const TestOptions& o, std::ostream& out) {
  const InputDataset data = read_dataset(o.path);
  json payload;
  if (o.censored) {
    const CensoredSample cs = data.to_censored();
    const CensoredReport r = censored_test(cs, o.alpha);
    payload["method"] = "censored";
    payload["n"] = cs.size();
    payload["events"] = cs.event_count();
    payload["alpha"] = o.alpha;
    payload["delta_star"] = r.delta_c_star;
    payload["delta"] = r.delta_c;
    payload["mean"] = r.mean_c;
    payload["sigma_hat"] = r.sigma_hat;
    payload["z"] = r.z;
    payload["critical_z"] = r.critical_z;
    payload["p_value"] = r.p_value;
    payload["reject"] = r.reject;
    emit(payload, o.format, out);
    return kExitOk;
  }

  const Sample s = data.to_sample();
  std::string method = o.method;
  if (method == "auto") method = s.size() <= o.auto_threshold ? "exact" : "asymptotic";
  payload["method"] = method;
  payload["n"] = s.size();
  payload["alpha"] = o.alpha;
  if (method == "exact") {
    const StatisticValue v = statistic_spacings(s);
    const ExactNull law(s.size());
    const double critical = law.critical_value(o.alpha);
    payload["delta_star"] = v.delta_star;
    payload["delta"] = v.delta;
    payload["mean"] = v.mean;
    payload["critical_value"] = critical;
    payload["p_value"] = law.p_value(v.delta_star);
    payload["reject"] = v.delta_star > critical;
  } else {
    const AsymptoticReport r = asymptotic_test(s, o.alpha);
    payload["delta_star"] = r.statistic.delta_star;
    payload["delta"] = r.statistic.delta;
    payload["mean"] = r.statistic.mean;
    payload["z"] = r.z;
    payload["critical_z"] = r.critical_z;
    payload["p_value"] = r.p_value;
    payload["reject"] = r.reject;
  }
  emit(payload, o.format, out);
  return kExitOk;
}

// ---------------------------------------------------------------- critval

struct CritvalOptions {
  std::optional<std::size_t> n;
  std::optional<double> alpha;
  bool table = false;
  std::vector<double> levels;
  std::vector<std::size_t> sizes;
  std::string format = "text";
};

int cmd_critval(const CritvalOptions& o, std::ostream& out) {
  if (!o.table) {
    if (!o.n || !o.alpha) {
      throw Error(ErrorKind::InvalidConfig, "critval needs --n and --alpha, or --table");
    }
    const double c = ExactNull(*o.n).critical_value(*o.alpha);
    if (o.format == "json") {
      out << json{{"n", *o.n}, {"alpha", *o.alpha}, {"critical_value", c}}.dump(2) << '\n';
    } else if (o.format == "csv") {
      out << "n,alpha,critical_value\n" << fmt::format("{},{},{}\n", *o.n, *o.alpha, c);
    } else {
      out << fmt::format("{:.4f}\n", c);
    }
    return kExitOk;
  }

  const auto levels = o.levels.empty() ? default_table_levels() : o.levels;
  const auto sizes = o.sizes.empty() ? default_table_sizes() : o.sizes;
  const auto table = critical_table(levels, sizes);
  if (o.format == "json") {
    out << json{{"levels", levels}, {"sizes", sizes}, {"critical_values", table}}.dump(2) << '\n';
  } else if (o.format == "csv") {
    out << "n,alpha,critical_value\n";
    for (std::size_t r = 0; r < sizes.size(); ++r) {
      for (std::size_t c = 0; c < levels.size(); ++c) {
        out << fmt::format("{},{},{}\n", sizes[r], levels[c], table[r][c]);
      }
    }
  } else {
    out << fmt::format("{:>5}", "n");
    for (double a : levels) out << fmt::format("  {:>9}", fmt::format("{:g}%", 100.0 * (1.0 - a)));
    out << '\n';
    for (std::size_t r = 0; r < sizes.size(); ++r) {
      out << fmt::format("{:>5}", sizes[r]);
      for (double v : table[r]) out << fmt::format("  {:>9.4f}", v);
      out << '\n';
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------- pae

int cmd_pae(const std::string& family, const std::string& route_name, const std::string& format,
            std::ostream& out) {
  std::vector<FamilyKind> kinds;
  if (family == "all") {
    kinds = {FamilyKind::Weibull, FamilyKind::LinearFailureRate, FamilyKind::Makeham};
  } else {
    kinds = {require_family(family)};
  }
  DerivativeRoute route = DerivativeRoute::FiniteDifference;
  if (route_name == "integrand") {
    route = DerivativeRoute::IntegrandDerivative;
  } else if (route_name != "fd") {
    throw Error(ErrorKind::InvalidConfig, "route must be 'fd' or 'integrand'");
  }

  json rows = json::array();
  for (FamilyKind k : kinds) {
    const EfficacyResult r = pae(k, route);
    rows.push_back({{"family", to_string(k)},
                    {"lambda0", r.lambda0},
                    {"w_prime", r.w_prime},
                    {"mean_prime", r.mean_prime},
                    {"pae", r.pae}});
  }
  if (format == "json") {
    out << rows.dump(2) << '\n';
  } else if (format == "csv") {
    out << "family,lambda0,w_prime,mean_prime,pae\n";
    for (const auto& r : rows) {
      out << fmt::format("{},{},{},{},{}\n", r["family"].get<std::string>(),
                         r["lambda0"].get<double>(), r["w_prime"].get<double>(),
                         r["mean_prime"].get<double>(), r["pae"].get<double>());
    }
  } else {
    for (const auto& r : rows) {
      out << fmt::format("{:<10} {:.4f}\n", r["family"].get<std::string>(), r["pae"].get<double>());
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
  std::string what;
  std::string method = "asymptotic";
  std::string family = "exponential";
  std::optional<double> lambda;
  std::optional<std::size_t> n;
  std::size_t reps = 10000;
  std::vector<double> levels{0.05, 0.01};
  std::optional<std::uint64_t> seed;
  std::string censoring_family;
  double censoring_lambda = 0.5;
  double location = 0.0;
  double null_rate = 1.0;
  int table = 3;
  std::string format = "text";
};

std::optional<FamilySpec> censoring_spec(const SimulateOptions& o) {
  if (o.censoring_family.empty() || o.censoring_family == "none") return std::nullopt;
  FamilySpec c{require_family(o.censoring_family), o.censoring_lambda, o.location};
  c.validate();
  return c;
}

void emit_results(std::span<const ExperimentResult> results, const std::string& format,
                  std::ostream& out) {
  if (format == "json") {
    out << to_json(results).dump(2) << '\n';
  } else if (format == "csv") {
    out << to_csv(results);
  } else {
    out << to_grid(results);
  }
}

int cmd_simulate(const SimulateOptions& o, std::ostream& out, std::ostream& err) {
  const std::uint64_t seed = resolve_seed(o.seed, err);

  if (o.what == "are") {
    AreOptions opts;
    if (o.n) opts.sample_size = *o.n;
    opts.replicates = o.reps;
    opts.master_seed = seed;
    const auto censoring = censoring_spec(o);
    const AreResult r = are_censored(censoring, o.null_rate, opts);
    const json payload{{"censoring", censoring ? censoring->describe() : "none"},
                       {"null_rate", o.null_rate},
                       {"n", opts.sample_size},
                       {"replicates", r.replicates},
                       {"seed", seed},
                       {"are", r.are},
                       {"standard_error", r.standard_error},
                       {"statistic_variance", r.statistic_variance},
                       {"censored_fraction", r.censored_fraction},
                       {"failures", r.failures}};
    emit(payload, o.format, out);
    return kExitOk;
  }

  std::vector<ExperimentConfig> configs;
  if (o.what == "table") {
    switch (o.table) {
      case 3: configs = type1_table_configs(o.reps, seed); break;
      case 4: configs = power_table_configs(FamilyKind::Weibull, o.reps, seed); break;
      case 5: configs = power_table_configs(FamilyKind::LinearFailureRate, o.reps, seed); break;
      case 6: configs = power_table_configs(FamilyKind::Makeham, o.reps, seed); break;
      default: throw Error(ErrorKind::InvalidConfig, "--table must be 3, 4, 5 or 6");
    }
    const auto results = run_suite(configs);
    emit_results(results, o.format, out);
    return kExitOk;
  }

  ExperimentConfig c;
  const auto test = parse_test_kind(o.method);
  if (!test) throw Error(ErrorKind::InvalidConfig, "method must be exact, asymptotic or censored");
  c.test = *test;
  const FamilyKind kind = require_family(o.family);
  c.family = FamilySpec{kind, o.lambda.value_or(kind == FamilyKind::Exponential ||
                                                        kind == FamilyKind::Weibull
                                                    ? 1.0
                                                    : 0.0),
                        0.0};
  c.n = o.n.value_or(100);
  c.replications = o.reps;
  c.alpha_levels = o.levels;
  c.master_seed = seed;

  ExperimentResult result;
  if (o.what == "type1") {
    result = type1_error(c);
  } else if (o.what == "power") {
    if (!o.lambda) throw Error(ErrorKind::InvalidConfig, "power needs --lambda");
    result = power(c);
  } else if (o.what == "censored") {
    c.test = TestKind::Censored;
    c.censoring = censoring_spec(o);
    result = run_experiment(c);
  } else {
    throw Error(ErrorKind::InvalidConfig, "unknown simulation '" + o.what + "'");
  }
  const std::vector<ExperimentResult> results{result};
  if (o.format == "text") {
    for (const auto& l : result.levels) {
      out << fmt::format("{} {} n={} reps={} seed={} alpha={:g}: rate={:.4f} se={:.4f} failures={}\n",
                         to_string(c.test), c.family.describe(), c.n, c.replications, seed,
                         l.alpha, l.rejection_rate, l.standard_error, result.failures);
    }
  } else {
    emit_results(results, o.format, out);
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and asymptotic tests of exponentiality against RIMRL alternatives"};
  app.require_subcommand(1);
  const std::vector<std::string> formats{"text", "csv", "json"};

  TestOptions test;
  auto* test_cmd = app.add_subcommand("test", "Test a dataset for exponentiality");
  test_cmd->add_option("path", test.path, "Delimited file: time[,status]")->required();
  test_cmd->add_option("--method", test.method, "exact, asymptotic or auto")
      ->check(CLI::IsMember({"exact", "asymptotic", "auto"}));
  test_cmd->add_option("--alpha", test.alpha, "Significance level");
  test_cmd->add_flag("--censored", test.censored, "Use the right-censored test (needs status)");
  test_cmd->add_option("--auto-threshold", test.auto_threshold,
                       "Largest n for which auto picks the exact test");
  test_cmd->add_option("--format", test.format)->check(CLI::IsMember(formats));

  CritvalOptions crit;
  auto* crit_cmd = app.add_subcommand("critval", "Exact critical values");
  crit_cmd->add_option("--n", crit.n, "Sample size");
  crit_cmd->add_option("--alpha", crit.alpha, "Significance level");
  crit_cmd->add_flag("--table", crit.table, "Print the full table");
  crit_cmd->add_option("--levels", crit.levels, "Levels for --table");
  crit_cmd->add_option("--sizes", crit.sizes, "Sizes for --table");
  crit_cmd->add_option("--format", crit.format)->check(CLI::IsMember(formats));

  std::string pae_family = "all";
  std::string pae_route = "fd";
  std::string pae_format = "text";
  auto* pae_cmd = app.add_subcommand("pae", "Pitman asymptotic efficacy");
  pae_cmd->add_option("family", pae_family, "weibull, lfr, makeham or all");
  pae_cmd->add_option("--route", pae_route, "fd or integrand");
  pae_cmd->add_option("--format", pae_format)->check(CLI::IsMember(formats));

  SimulateOptions sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo experiments");
  sim_cmd->add_option("what", sim.what, "type1, power, censored, are or table")
      ->required()
      ->check(CLI::IsMember({"type1", "power", "censored", "are", "table"}));
  sim_cmd->add_option("--method", sim.method, "exact or asymptotic");
  sim_cmd->add_option("--family", sim.family, "Lifetime family");
  sim_cmd->add_option("--lambda", sim.lambda, "Lifetime family parameter");
  sim_cmd->add_option("--n", sim.n, "Sample size");
  sim_cmd->add_option("--reps", sim.reps, "Replications");
  sim_cmd->add_option("--levels", sim.levels, "Significance levels");
  sim_cmd->add_option("--seed", sim.seed, "Master seed");
  sim_cmd->add_option("--censoring", sim.censoring_family, "Censoring family (or none)");
  sim_cmd->add_option("--censoring-lambda", sim.censoring_lambda, "Censoring family parameter");
  sim_cmd->add_option("--location", sim.location, "Logistic censoring location");
  sim_cmd->add_option("--null-rate", sim.null_rate, "Exponential rate for ARE lifetimes");
  sim_cmd->add_option("--table", sim.table, "Published table to regenerate (3-6)");
  sim_cmd->add_option("--format", sim.format)->check(CLI::IsMember(formats));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    if (test_cmd->parsed()) return cmd_test(test, out);
    if (crit_cmd->parsed()) return cmd_critval(crit, out);
    if (pae_cmd->parsed()) return cmd_pae(pae_family, pae_route, pae_format, out);
    if (sim_cmd->parsed()) return cmd_simulate(sim, out, err);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return e.kind() == ErrorKind::Numeric ? kExitNumeric : kExitInput;
  }
  return kExitInput;
}

}  // namespace rimrl::cli
