#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace propfair {

// Absolute slack on the >= comparisons in the fairness predicates, absorbing
// floating-point summation error. Utilities live in [0,1] and bundle sums stay
// small, so 1e-9 is far above accumulated rounding and far below any
// meaningful utility difference.
inline constexpr double kFairnessTol = 1e-9;

// An allocation problem: n agents, m goods, additive utilities with every
// entry in [0,1]. Immutable after construction; concurrent readers are safe.
class Instance {
 public:
  // `utilities` is row-major (agent-major): entry (i, g) at i*goods + g.
  Instance(std::size_t agents, std::size_t goods, std::vector<double> utilities);

  static Instance from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t agents() const { return agents_; }
  std::size_t goods() const { return goods_; }

  double utility(std::size_t agent, std::size_t good) const {
    return utilities_[agent * goods_ + good];
  }

  std::span<const double> row(std::size_t agent) const {
    return std::span<const double>(utilities_).subspan(agent * goods_, goods_);
  }

 private:
  std::size_t agents_;
  std::size_t goods_;
  std::vector<double> utilities_;
};

// owner[g] is the agent that receives good g. Every good has exactly one
// owner; bundles may be empty.
struct Allocation {
  std::vector<std::size_t> owner;
};

// True iff `alloc` assigns every good of `inst` to a valid agent index.
bool allocation_valid(const Instance& inst, const Allocation& alloc);

// Sum of the agent's utilities over the goods she owns, in ascending good
// order. Empty bundle sums to 0.
double bundle_utility(const Instance& inst, const Allocation& alloc, std::size_t agent);

// The agent's utility for the entire good set.
double total_utility(const Instance& inst, std::size_t agent);

// total_utility / n, the agent's fairness target.
double proportional_share(const Instance& inst, std::size_t agent);

// Every agent's bundle is worth at least her proportional share (minus tol).
bool is_proportional(const Instance& inst, const Allocation& alloc);

// Every agent values her own bundle at least as much as any other bundle
// (minus tol). Implies is_proportional under additive utilities.
bool is_envy_free(const Instance& inst, const Allocation& alloc);

}  // namespace propfair
