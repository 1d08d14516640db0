#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "propfair/allocators.hpp"
#include "propfair/core_model.hpp"
#include "propfair/distributions.hpp"
#include "propfair/exact_checker.hpp"

namespace propfair {

enum class Regime {
  kMultiple,     // m = k*n, exact-multiple allocator
  kSuperlinear,  // m = floor(n^power), surplus allocator
  kCustom,       // fixed m for every n, surplus allocator
};

struct ExperimentConfig {
  Regime regime = Regime::kMultiple;
  std::size_t multiple_k = 1;
  double superlinear_power = 2.0;
  std::size_t custom_goods = 0;

  DistributionSpec dist = DistributionSpec::uniform(0.0, 1.0);
  std::vector<std::size_t> n_values;
  std::size_t trials = 0;
  std::uint64_t seed = 0;

  // Run the exact existence oracle next to the allocator where feasible.
  bool oracle_check = false;
  SearchLimits oracle_limits;

  double beta_floor = kDefaultBetaFloor;
  std::optional<double> delta_override;  // validated against the support
  bool verify = true;
  unsigned threads = 0;  // 0 -> hardware concurrency

  // Goods count for one row; throws when the regime cannot produce m >= n.
  std::size_t goods_for(std::size_t n) const;

  // Textual regime form: "multiple:k" | "superlinear:n^p" | "custom:m".
  void set_regime(std::string_view text);
  std::string regime_string() const;
};

struct ExperimentRow {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t trials = 0;
  std::size_t alloc_successes = 0;
  double alloc_freq = 0.0;
  double alloc_ci_lo = 0.0;
  double alloc_ci_hi = 0.0;
  bool oracle_skipped = false;
  std::size_t exists_count = 0;  // meaningful iff oracle ran and !oracle_skipped
  double exists_freq = 0.0;
  double exists_ci_lo = 0.0;
  double exists_ci_hi = 0.0;
  bool oracle_ran = false;
  double mean_trial_ms = 0.0;  // diagnostics only; never serialized
  std::uint64_t seed = 0;
};

struct ExperimentSummary {
  std::vector<ExperimentRow> rows;  // sorted by (n, m)
  Margin margin;
  double mean = 0.0;
};

// Seeded Monte Carlo sweep. Per-trial seeds derive from (seed, n, trial), so
// the summary is identical for identical configs at any thread count.
ExperimentSummary run_experiment(const ExperimentConfig& cfg);

// Fixed columns: n,m,trials,alloc_success,alloc_ci_lo,alloc_ci_hi,exists,
// exists_ci_lo,exists_ci_hi,oracle_skipped,seed. Unmeasured oracle cells are
// left empty. Byte-stable for a given summary.
std::string to_csv(const ExperimentSummary& summary);

// Wilson score interval for a binomial proportion; always brackets the point
// estimate and stays inside [0, 1].
std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials,
                                          double confidence = 0.95);

// n x (2n-1) instance with i.i.d. uniform(0.4, 0.6) utilities; every agent
// then needs two goods but only 2n-1 exist, so no proportional allocation is
// possible. Requires n >= 3 (the share bound only clears 0.6 from there).
Instance remark1_instance(std::size_t n, std::uint64_t seed);

// n x n instance (n even) whose first n/2 goods are worth at most 0.1 to
// everyone and last n/2 at least 0.9; agents stuck with only cheap goods
// cannot reach their share.
Instance remark2_instance(std::size_t n, std::uint64_t seed);

// The (margin, mean) pair a config resolves to: margin_for(dist, beta_floor),
// or the delta override validated against the support with beta set to the
// exact tail.
std::pair<Margin, double> resolve_margin(const ExperimentConfig& cfg);

}  // namespace propfair
