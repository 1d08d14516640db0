#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "propfair/core_model.hpp"

namespace propfair {

inline constexpr std::size_t kUnmatched = std::numeric_limits<std::size_t>::max();

// Bipartite graph as per-left adjacency lists; indices per row are strictly
// increasing and below right_count.
struct BipartiteGraph {
  std::size_t left_count = 0;
  std::size_t right_count = 0;
  std::vector<std::vector<std::uint32_t>> adjacency;
};

struct Matching {
  std::vector<std::size_t> pair_of_left;  // kUnmatched when free

  std::size_t size() const {
    std::size_t count = 0;
    for (const std::size_t r : pair_of_left) {
      if (r != kUnmatched) ++count;
    }
    return count;
  }

  bool perfect(const BipartiteGraph& graph) const { return size() == graph.left_count; }
};

// Agents on the left, the goods of `block` on the right; edge (i, pos) iff
// the agent values block[pos] at least thresholds[i].
BipartiteGraph threshold_graph(const Instance& inst, std::span<const std::size_t> block,
                               std::span<const double> thresholds);

// Maximum-cardinality matching via Hopcroft-Karp. Vertices are scanned in
// ascending index order, so repeated runs give the identical matching.
Matching maximum_matching(const BipartiteGraph& graph);

// Exact maximum matching size by exhaustive branching; test oracle.
// Requires left_count <= 10.
std::size_t brute_force_matching_size(const BipartiteGraph& graph);

}  // namespace propfair
