// propfair: batch front end for the proportional-fairness toolkit.
//
// Subcommands: allocate, check, simulate, counterexample. Structured output
// (JSON, CSV) goes to stdout, diagnostics to stderr. Exit codes: 0 success,
// 1 honest failure (construction or oracle could not deliver), 2 usage or
// parse error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "propfair/exact_checker.hpp"
#include "propfair/experiments.hpp"
#include "propfair/json_io.hpp"

namespace {

using nlohmann::ordered_json;
using namespace propfair;

constexpr int kExitSuccess = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct MarginFlags {
  std::string dist = "uniform:0,1";
  double beta_floor = kDefaultBetaFloor;
  std::optional<double> delta;

  void attach(CLI::App* cmd) {
    cmd->add_option("--dist", dist,
                    "utility distribution (uniform:lo,hi | bernoulli:p | discrete:v1,p1;...)")
        ->capture_default_str();
    cmd->add_option("--beta-floor", beta_floor, "tail-mass floor for the derived margin")
        ->capture_default_str();
    cmd->add_option("--delta", delta,
                    "margin delta override, validated against the distribution support");
  }

  // (margin, mean) for the flags; reuses the experiment-side resolution.
  std::pair<Margin, double> resolve() const {
    ExperimentConfig cfg;
    cfg.dist = DistributionSpec::parse(dist);
    cfg.beta_floor = beta_floor;
    cfg.delta_override = delta;
    return resolve_margin(cfg);
  }
};

unsigned threads_from_env() {
  if (const char* env = std::getenv("PROPFAIR_THREADS")) {
    const long value = std::strtol(env, nullptr, 10);
    if (value > 0) return static_cast<unsigned>(value);
  }
  return 0;
}

int run_allocate(const std::string& instance_path, int theorem, const MarginFlags& margin_flags,
                 bool verify) {
  const Instance inst = load_instance(instance_path);
  AllocatorConfig cfg;
  std::tie(cfg.margin, cfg.mean) = margin_flags.resolve();
  cfg.verify = verify;
  std::cerr << "margin: delta=" << cfg.margin.delta << " beta=" << cfg.margin.beta
            << " threshold=" << (1.0 + cfg.margin.delta) * cfg.mean << "\n";
  const AllocatorOutcome outcome =
      theorem == 1 ? theorem1_allocate(inst, cfg) : theorem2_allocate(inst, cfg);
  std::cout << outcome_to_json(outcome) << "\n";
  return outcome.success() ? kExitSuccess : kExitFailure;
}

int run_check(const std::string& instance_path, const std::optional<std::string>& allocation_path,
              const SearchLimits& limits) {
  const Instance inst = load_instance(instance_path);
  if (allocation_path) {
    const Allocation alloc = load_allocation(*allocation_path);
    if (!allocation_valid(inst, alloc)) {
      throw std::invalid_argument("allocation does not fit the instance (owner list must have m=" +
                                  std::to_string(inst.goods()) + " entries below n=" +
                                  std::to_string(inst.agents()) + ")");
    }
    ordered_json doc;
    doc["proportional"] = is_proportional(inst, alloc);
    doc["envy_free"] = is_envy_free(inst, alloc);
    std::cout << doc.dump() << "\n";
    return kExitSuccess;
  }

  if (inst.agents() > limits.max_agents || inst.goods() > limits.max_goods) {
    std::cerr << "instance " << inst.agents() << "x" << inst.goods()
              << " exceeds oracle limits " << limits.max_agents << "x" << limits.max_goods
              << "; raise --max-agents/--max-goods to force the search\n";
    return kExitFailure;
  }
  const ExistenceResult result = exists_proportional(inst, limits);
  ordered_json doc;
  switch (result.verdict) {
    case ExistVerdict::kYes:
      doc["verdict"] = "yes";
      doc["witness"] = ordered_json{{"owner", result.witness->owner}};
      break;
    case ExistVerdict::kNo:
      doc["verdict"] = "no";
      break;
    case ExistVerdict::kBudgetExceeded:
      doc["verdict"] = "budget_exceeded";
      break;
  }
  doc["nodes"] = result.nodes;
  std::cout << doc.dump() << "\n";
  return result.verdict == ExistVerdict::kBudgetExceeded ? kExitFailure : kExitSuccess;
}

int run_simulate(ExperimentConfig cfg, bool as_json) {
  if (cfg.threads == 0) cfg.threads = threads_from_env();
  const ExperimentSummary summary = run_experiment(cfg);
  std::cerr << "margin: delta=" << summary.margin.delta << " beta=" << summary.margin.beta
            << "\n";
  for (const ExperimentRow& row : summary.rows) {
    std::cerr << "n=" << row.n << " m=" << row.m << ": " << row.mean_trial_ms
              << " ms/trial\n";
  }
  if (as_json) {
    std::cout << summary_to_json(summary) << "\n";
  } else {
    std::cout << to_csv(summary);
  }
  return kExitSuccess;
}

int run_counterexample(const std::string& family, std::size_t n, std::uint64_t seed,
                       bool with_oracle) {
  Instance inst = family == "remark1" ? remark1_instance(n, seed) : remark2_instance(n, seed);
  ordered_json doc;
  doc["family"] = family;
  doc["instance"] = ordered_json::parse(instance_to_json(inst));
  const SearchLimits limits;
  if (with_oracle && inst.agents() <= limits.max_agents && inst.goods() <= limits.max_goods) {
    const ExistenceResult result = exists_proportional(inst, limits);
    doc["oracle_verdict"] = result.verdict == ExistVerdict::kYes  ? "yes"
                            : result.verdict == ExistVerdict::kNo ? "no"
                                                                  : "budget_exceeded";
  } else {
    doc["oracle_verdict"] = nullptr;
  }
  std::cout << doc.dump() << "\n";
  return kExitSuccess;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proportionally fair allocation of indivisible goods: constructive allocators, "
               "exact existence oracles, counterexample generators, and a Monte Carlo harness"};
  app.require_subcommand(1);

  // allocate
  auto* allocate_cmd = app.add_subcommand(
      "allocate", "run a block-matching allocator on an instance file");
  std::string instance_path;
  int theorem = 1;
  bool no_verify = false;
  MarginFlags allocate_margin;
  allocate_cmd->add_option("--instance", instance_path, "instance JSON file")->required();
  allocate_cmd->add_option("--theorem", theorem, "1: exact-multiple blocks; 2: surplus blocks")
      ->check(CLI::IsMember({1, 2}))
      ->required();
  allocate_margin.attach(allocate_cmd);
  allocate_cmd->add_flag("--no-verify", no_verify, "skip the post-hoc proportionality check");

  // check
  auto* check_cmd = app.add_subcommand(
      "check", "verify an allocation, or decide existence exactly when none is given");
  std::string check_instance;
  std::optional<std::string> check_allocation;
  SearchLimits check_limits;
  check_cmd->add_option("--instance", check_instance, "instance JSON file")->required();
  check_cmd->add_option("--allocation", check_allocation, "allocation JSON file");
  check_cmd->add_option("--max-agents", check_limits.max_agents, "oracle agent limit")
      ->capture_default_str();
  check_cmd->add_option("--max-goods", check_limits.max_goods, "oracle good limit")
      ->capture_default_str();
  check_cmd->add_option("--node-budget", check_limits.node_budget, "search node budget")
      ->capture_default_str();

  // simulate
  auto* simulate_cmd = app.add_subcommand(
      "simulate", "Monte Carlo sweep of allocator success and existence frequencies");
  std::string config_path;
  std::string regime = "multiple:1";
  MarginFlags simulate_margin;
  std::vector<std::size_t> n_values;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  bool oracle = false;
  bool sim_no_verify = false;
  bool as_json = false;
  unsigned threads = 0;
  simulate_cmd->add_option("--config", config_path,
                           "experiment config JSON (flags are ignored when set, except --threads)");
  simulate_cmd->add_option("--regime", regime, "multiple:k | superlinear:n^p | custom:m")
      ->capture_default_str();
  simulate_margin.attach(simulate_cmd);
  simulate_cmd->add_option("--n", n_values, "agent counts (comma separated)")->delimiter(',');
  simulate_cmd->add_option("--trials", trials, "trials per point");
  simulate_cmd->add_option("--seed", seed, "master seed")->capture_default_str();
  simulate_cmd->add_flag("--oracle", oracle, "also run the exact existence oracle where feasible");
  simulate_cmd->add_flag("--no-verify", sim_no_verify, "skip post-hoc allocation verification");
  simulate_cmd->add_flag("--json", as_json, "emit a JSON summary instead of CSV");
  simulate_cmd->add_option("--threads", threads,
                           "worker threads (default: PROPFAIR_THREADS or hardware)");

  // counterexample
  auto* counter_cmd = app.add_subcommand(
      "counterexample", "emit a seeded instance from a family with no proportional allocation");
  std::string family;
  std::size_t counter_n = 0;
  std::uint64_t counter_seed = 0;
  bool skip_oracle = false;
  counter_cmd->add_option("--family", family, "remark1 (m=2n-1, tight support) | remark2 (split support)")
      ->check(CLI::IsMember({"remark1", "remark2"}))
      ->required();
  counter_cmd->add_option("--n", counter_n, "agent count")->required();
  counter_cmd->add_option("--seed", counter_seed, "seed")->capture_default_str();
  counter_cmd->add_flag("--skip-oracle", skip_oracle, "emit the instance without the oracle verdict");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (allocate_cmd->parsed()) {
      return run_allocate(instance_path, theorem, allocate_margin, !no_verify);
    }
    if (check_cmd->parsed()) {
      return run_check(check_instance, check_allocation, check_limits);
    }
    if (simulate_cmd->parsed()) {
      ExperimentConfig cfg;
      if (!config_path.empty()) {
        cfg = experiment_config_from_json(read_text_file(config_path));
      } else {
        cfg.set_regime(regime);
        cfg.dist = DistributionSpec::parse(simulate_margin.dist);
        cfg.beta_floor = simulate_margin.beta_floor;
        cfg.delta_override = simulate_margin.delta;
        cfg.n_values = n_values;
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.oracle_check = oracle;
        cfg.verify = !sim_no_verify;
      }
      if (threads != 0) cfg.threads = threads;
      return run_simulate(std::move(cfg), as_json);
    }
    if (counter_cmd->parsed()) {
      return run_counterexample(family, counter_n, counter_seed, !skip_oracle);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
