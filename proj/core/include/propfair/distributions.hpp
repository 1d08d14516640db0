#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "propfair/core_model.hpp"

namespace propfair {

// Default tail-mass floor used when deriving a margin. Moderate enough to
// keep threshold graphs dense at small n while the margin stays useful.
inline constexpr double kDefaultBetaFloor = 0.3;

// Requested for a distribution that puts all probability on a single point;
// no positive-margin tail exists there.
class MarginUnavailable : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A utility-value distribution with support inside [0,1]. Value semantics,
// immutable once built. Sampling is a pure function of (seed, agent, good).
class DistributionSpec {
 public:
  enum class Kind { kUniform, kBernoulli, kDiscrete };

  // Uniform on [lo, hi], 0 <= lo <= hi <= 1.
  static DistributionSpec uniform(double lo, double hi);

  // Value 0 with probability zero_prob, value 1 otherwise.
  static DistributionSpec bernoulli(double zero_prob);

  // Finite support in [0,1]; probs nonnegative, summing to 1 within 1e-12.
  // Duplicate values are merged and zero-probability points dropped.
  static DistributionSpec discrete(std::vector<double> values, std::vector<double> probs);

  // Textual form: "uniform:lo,hi" | "bernoulli:p" | "discrete:v1,p1;v2,p2;...".
  static DistributionSpec parse(std::string_view text);
  std::string to_string() const;

  Kind kind() const { return kind_; }
  double mean() const { return mean_; }

  // Support is a single point (Bernoulli with p in {0,1}, uniform with
  // lo == hi, one-point discrete).
  bool degenerate() const;

  double min_support() const;
  double max_support() const;

  // Pr[X >= threshold], closed form.
  double tail_probability(double threshold) const;

  // The draw for matrix entry (agent, good) under `seed`. Reproducible
  // independent of evaluation order or thread count.
  double sample(std::uint64_t seed, std::uint64_t agent, std::uint64_t good) const;

  // Discrete view (Bernoulli included): ascending support and probabilities.
  // Empty for uniform.
  const std::vector<double>& support() const { return values_; }
  const std::vector<double>& probabilities() const { return probs_; }

  double uniform_lo() const { return lo_; }
  double uniform_hi() const { return hi_; }

 private:
  DistributionSpec() = default;

  Kind kind_ = Kind::kUniform;
  double lo_ = 0.0, hi_ = 0.0;   // uniform bounds
  std::vector<double> values_;   // discrete support, ascending (also Bernoulli)
  std::vector<double> probs_;
  double mean_ = 0.0;
};

// Constants (delta, beta) certifying Pr[X >= (1+delta)*mean] >= beta.
struct Margin {
  double delta = 0.0;
  double beta = 0.0;
};

// Largest delta whose tail probability still reaches beta_floor, with beta
// set to the exact tail at that delta. Throws MarginUnavailable for
// degenerate specs and std::domain_error when no positive delta can reach
// beta_floor (e.g. beta_floor >= 1/2 for a uniform distribution).
Margin margin_for(const DistributionSpec& spec, double beta_floor = kDefaultBetaFloor);

// exp(-epsilon^2 * expected / 3); the upper tail bound for sums of
// independent [0,1] variables. Requires epsilon in (0,1), expected >= 0.
double chernoff_bound(double epsilon, double expected);

// n x m instance of i.i.d. draws from `spec`. Identical (spec, n, m, seed)
// yields an identical matrix regardless of thread count.
Instance sample_instance(const DistributionSpec& spec, std::size_t agents, std::size_t goods,
                         std::uint64_t seed);

}  // namespace propfair
