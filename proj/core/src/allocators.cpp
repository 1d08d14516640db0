#include "propfair/allocators.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "propfair/matching.hpp"

namespace propfair {

namespace {

void check_config(const AllocatorConfig& cfg) {
  if (!(cfg.margin.delta > 0.0)) {
    throw std::invalid_argument("margin delta must be positive");
  }
  if (!(cfg.margin.beta > 0.0 && cfg.margin.beta <= 1.0)) {
    throw std::invalid_argument("margin beta must lie in (0, 1]");
  }
  if (!(cfg.mean > 0.0)) {
    throw std::invalid_argument("distribution mean must be positive");
  }
  if (cfg.alpha) {
    const double lower = (1.0 + cfg.margin.delta / 2.0) / (1.0 + cfg.margin.delta);
    if (!(*cfg.alpha > lower && *cfg.alpha < 1.0)) {
      throw std::invalid_argument("alpha " + std::to_string(*cfg.alpha) +
                                  " outside (" + std::to_string(lower) + ", 1)");
    }
  }
}

AllocatorOutcome single_agent_outcome(const Instance& inst) {
  // One agent owns everything and trivially meets her share.
  AllocatorOutcome out;
  out.status = AllocStatus::kSuccess;
  out.allocation = Allocation{std::vector<std::size_t>(inst.goods(), 0)};
  return out;
}

// Matches consecutive blocks of n goods at threshold (1+delta)*mean and
// reports every block's matching size.
std::vector<Matching> match_blocks(const Instance& inst, const AllocatorConfig& cfg,
                                   std::size_t block_count, AllocatorOutcome& out) {
  const std::size_t n = inst.agents();
  const std::vector<double> thresholds(n, (1.0 + cfg.margin.delta) * cfg.mean);
  std::vector<Matching> matchings;
  matchings.reserve(block_count);
  std::vector<std::size_t> block(n);
  for (std::size_t b = 0; b < block_count; ++b) {
    std::iota(block.begin(), block.end(), b * n);
    const BipartiteGraph graph = threshold_graph(inst, block, thresholds);
    matchings.push_back(maximum_matching(graph));
    out.block_matching_sizes.push_back(matchings.back().size());
  }
  return matchings;
}

bool verify_or_fail(const Instance& inst, AllocatorOutcome& out) {
  for (std::size_t i = 0; i < inst.agents(); ++i) {
    if (bundle_utility(inst, *out.allocation, i) < proportional_share(inst, i) - kFairnessTol) {
      out.status = AllocStatus::kVerificationFailed;
      out.failed_agent = i;
      out.allocation.reset();
      return false;
    }
  }
  return true;
}

}  // namespace

std::size_t required_groups(std::size_t goods, std::size_t agents, const Margin& margin) {
  if (agents == 0 || goods < agents) {
    throw std::invalid_argument("required_groups needs m >= n >= 1");
  }
  if (!(margin.delta > 0.0)) {
    throw std::invalid_argument("margin delta must be positive");
  }
  const double ratio = (1.0 + margin.delta / 2.0) / (1.0 + margin.delta);
  const double target = ratio * (static_cast<double>(goods) / static_cast<double>(agents));
  // The 1e-9 guards ceil against upward rounding noise in the product.
  return static_cast<std::size_t>(std::ceil(target - 1e-9));
}

AllocatorOutcome theorem1_allocate(const Instance& inst, const AllocatorConfig& cfg) {
  check_config(cfg);
  const std::size_t n = inst.agents();
  const std::size_t m = inst.goods();
  if (m == 0 || m % n != 0) {
    throw std::invalid_argument("theorem1_allocate needs m to be a positive multiple of n (m=" +
                                std::to_string(m) + ", n=" + std::to_string(n) +
                                "); use theorem2_allocate for m >= n");
  }
  if (n == 1) return single_agent_outcome(inst);

  const std::size_t k = m / n;
  AllocatorOutcome out;
  const std::vector<Matching> matchings = match_blocks(inst, cfg, k, out);
  for (std::size_t b = 0; b < k; ++b) {
    if (out.block_matching_sizes[b] < n) {
      out.status = AllocStatus::kMatchingFailed;
      out.failed_block = b;
      return out;
    }
  }

  Allocation alloc{std::vector<std::size_t>(m, 0)};
  for (std::size_t b = 0; b < k; ++b) {
    for (std::size_t agent = 0; agent < n; ++agent) {
      alloc.owner[b * n + matchings[b].pair_of_left[agent]] = agent;
    }
  }
  out.allocation = std::move(alloc);
  out.status = AllocStatus::kSuccess;
  if (cfg.verify) verify_or_fail(inst, out);
  return out;
}

AllocatorOutcome theorem2_allocate(const Instance& inst, const AllocatorConfig& cfg) {
  check_config(cfg);
  const std::size_t n = inst.agents();
  const std::size_t m = inst.goods();
  if (m < n) {
    throw std::invalid_argument("theorem2_allocate needs m >= n (m=" + std::to_string(m) +
                                ", n=" + std::to_string(n) + ")");
  }
  if (n == 1) return single_agent_outcome(inst);

  const std::size_t block_count = m / n;
  const std::size_t required = required_groups(m, n, cfg.margin);

  AllocatorOutcome out;
  const std::vector<Matching> matchings = match_blocks(inst, cfg, block_count, out);
  std::size_t matched = 0;
  for (const std::size_t size : out.block_matching_sizes) {
    if (size == n) ++matched;
  }
  if (matched < required) {
    out.status = AllocStatus::kInsufficientGroups;
    out.groups_found = matched;
    out.groups_required = required;
    return out;
  }

  // Matched blocks hand each agent one good; everything else (goods of
  // unmatched blocks plus the leftover tail) goes round-robin. Discarding
  // goods would break the partition, and extra goods never hurt.
  Allocation alloc{std::vector<std::size_t>(m, kUnmatched)};
  for (std::size_t b = 0; b < block_count; ++b) {
    if (out.block_matching_sizes[b] < n) continue;
    for (std::size_t agent = 0; agent < n; ++agent) {
      alloc.owner[b * n + matchings[b].pair_of_left[agent]] = agent;
    }
  }
  std::size_t next_agent = 0;
  for (std::size_t g = 0; g < m; ++g) {
    if (alloc.owner[g] != kUnmatched) continue;
    alloc.owner[g] = next_agent;
    next_agent = (next_agent + 1) % n;
  }

  out.allocation = std::move(alloc);
  out.status = AllocStatus::kSuccess;
  out.groups_found = matched;
  out.groups_required = required;
  if (cfg.verify) verify_or_fail(inst, out);
  return out;
}

}  // namespace propfair
