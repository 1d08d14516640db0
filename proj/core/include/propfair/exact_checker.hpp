#pragma once

#include <cstdint>
#include <optional>

#include "propfair/core_model.hpp"

namespace propfair {

struct SearchLimits {
  std::size_t max_agents = 6;
  std::size_t max_goods = 20;
  std::uint64_t node_budget = 100'000'000;
};

enum class ExistVerdict { kYes, kNo, kBudgetExceeded };

struct ExistenceResult {
  ExistVerdict verdict = ExistVerdict::kNo;
  std::optional<Allocation> witness;  // present iff verdict == kYes
  std::uint64_t nodes = 0;
};

// Exhaustive branch-and-bound over good->agent assignments. Goods are
// branched in descending value order (max over agents); a partial assignment
// is pruned as soon as some agent cannot reach her share even with every
// unassigned good. kNo is exhaustive; a blown node budget is reported as
// kBudgetExceeded, never as kNo. Throws std::invalid_argument when the
// instance exceeds `limits`.
ExistenceResult exists_proportional(const Instance& inst, const SearchLimits& limits = {});

enum class MatchingCaseVerdict { kYes, kNo, kNotApplicable };

struct MatchingCaseResult {
  MatchingCaseVerdict verdict = MatchingCaseVerdict::kNotApplicable;
  std::optional<Allocation> witness;
};

// Fast exact oracle for the square case: when m == n and every share is
// strictly positive, every agent needs at least one good, hence exactly one,
// so existence reduces to a perfect matching in the graph with an edge (i, g)
// iff u_i(g) covers agent i's share. Any other shape is kNotApplicable.
MatchingCaseResult exists_proportional_matching_case(const Instance& inst);

}  // namespace propfair
