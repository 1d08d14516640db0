#pragma once

#include <optional>
#include <vector>

#include "propfair/core_model.hpp"
#include "propfair/distributions.hpp"

namespace propfair {

enum class AllocStatus {
  kSuccess,
  kMatchingFailed,       // a block has no perfect matching (exact-multiple path)
  kInsufficientGroups,   // too few perfectly matched blocks (surplus path)
  kVerificationFailed,   // construction finished but an agent missed her share
};

struct AllocatorConfig {
  Margin margin;
  double mean = 0.0;  // distribution mean; block threshold is (1+delta)*mean

  // Optional override of the matched-group fraction bound; validated against
  // ((1+delta/2)/(1+delta), 1) but the success rule itself uses
  // required_groups directly.
  std::optional<double> alpha;

  // Post-hoc proportionality check on every constructed allocation.
  bool verify = true;
};

struct AllocatorOutcome {
  AllocStatus status = AllocStatus::kMatchingFailed;
  std::optional<Allocation> allocation;  // present iff status == kSuccess
  std::size_t failed_block = 0;          // kMatchingFailed
  std::size_t groups_found = 0;          // kInsufficientGroups
  std::size_t groups_required = 0;       // kInsufficientGroups
  std::size_t failed_agent = 0;          // kVerificationFailed
  std::vector<std::size_t> block_matching_sizes;

  bool success() const { return status == AllocStatus::kSuccess; }
};

// Exact-multiple construction, m = k*n: splits the goods into k consecutive
// blocks of n, matches every block at threshold (1+delta)*mean, and gives
// each agent her matched good from every block (exactly k goods each).
// Throws std::invalid_argument when m is not a positive multiple of n; use
// theorem2_allocate for that shape.
AllocatorOutcome theorem1_allocate(const Instance& inst, const AllocatorConfig& cfg);

// Surplus construction, m >= n: forms floor(m/n) blocks, requires at least
// required_groups of them to match perfectly, then hands every remaining
// good out round-robin by agent index. Throws std::invalid_argument when
// m < n.
AllocatorOutcome theorem2_allocate(const Instance& inst, const AllocatorConfig& cfg);

// ceil(((1+delta/2)/(1+delta)) * m/n): the matched-group count that certifies
// every agent reaches (1+delta/2)*(m/n)*mean, which covers her share when
// agent totals concentrate.
std::size_t required_groups(std::size_t goods, std::size_t agents, const Margin& margin);

}  // namespace propfair
