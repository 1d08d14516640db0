#include "propfair/matching.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <string>

namespace propfair {

BipartiteGraph threshold_graph(const Instance& inst, std::span<const std::size_t> block,
                               std::span<const double> thresholds) {
  if (thresholds.size() != inst.agents()) {
    throw std::invalid_argument("threshold_graph needs one threshold per agent");
  }
  std::vector<bool> seen(inst.goods(), false);
  for (const std::size_t g : block) {
    if (g >= inst.goods()) {
      throw std::invalid_argument("block good index " + std::to_string(g) + " out of range");
    }
    if (seen[g]) {
      throw std::invalid_argument("block repeats good index " + std::to_string(g));
    }
    seen[g] = true;
  }

  BipartiteGraph graph;
  graph.left_count = inst.agents();
  graph.right_count = block.size();
  graph.adjacency.resize(graph.left_count);
  for (std::size_t i = 0; i < graph.left_count; ++i) {
    for (std::size_t pos = 0; pos < block.size(); ++pos) {
      if (inst.utility(i, block[pos]) >= thresholds[i]) {
        graph.adjacency[i].push_back(static_cast<std::uint32_t>(pos));
      }
    }
  }
  return graph;
}

namespace {

// Layered BFS/DFS phases of Hopcroft-Karp. All scans run in ascending vertex
// order; the result is a pure function of the graph.
class HopcroftKarp {
 public:
  explicit HopcroftKarp(const BipartiteGraph& graph)
      : graph_(graph),
        match_left_(graph.left_count, kUnmatched),
        match_right_(graph.right_count, kUnmatched),
        layer_(graph.left_count, kInf) {}

  Matching run() {
    while (bfs()) {
      for (std::size_t u = 0; u < graph_.left_count; ++u) {
        if (match_left_[u] == kUnmatched) dfs(u);
      }
    }
    Matching result;
    result.pair_of_left = std::move(match_left_);
    return result;
  }

 private:
  static constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

  bool bfs() {
    std::queue<std::size_t> frontier;
    for (std::size_t u = 0; u < graph_.left_count; ++u) {
      if (match_left_[u] == kUnmatched) {
        layer_[u] = 0;
        frontier.push(u);
      } else {
        layer_[u] = kInf;
      }
    }
    bool reachable_free_right = false;
    while (!frontier.empty()) {
      const std::size_t u = frontier.front();
      frontier.pop();
      for (const std::uint32_t v : graph_.adjacency[u]) {
        const std::size_t w = match_right_[v];
        if (w == kUnmatched) {
          reachable_free_right = true;
        } else if (layer_[w] == kInf) {
          layer_[w] = layer_[u] + 1;
          frontier.push(w);
        }
      }
    }
    return reachable_free_right;
  }

  bool dfs(std::size_t u) {
    for (const std::uint32_t v : graph_.adjacency[u]) {
      const std::size_t w = match_right_[v];
      if (w == kUnmatched || (layer_[w] == layer_[u] + 1 && dfs(w))) {
        match_left_[u] = v;
        match_right_[v] = u;
        return true;
      }
    }
    layer_[u] = kInf;
    return false;
  }

  const BipartiteGraph& graph_;
  std::vector<std::size_t> match_left_;
  std::vector<std::size_t> match_right_;
  std::vector<std::size_t> layer_;
};

struct BruteForce {
  const BipartiteGraph& graph;
  std::vector<bool> used_right;
  std::size_t best = 0;

  void search(std::size_t u, std::size_t matched) {
    best = std::max(best, matched);
    if (u == graph.left_count) return;
    // Remaining left vertices bound the achievable size.
    if (matched + (graph.left_count - u) <= best) return;
    for (const std::uint32_t v : graph.adjacency[u]) {
      if (used_right[v]) continue;
      used_right[v] = true;
      search(u + 1, matched + 1);
      used_right[v] = false;
    }
    search(u + 1, matched);  // leave u unmatched
  }
};

}  // namespace

Matching maximum_matching(const BipartiteGraph& graph) {
  return HopcroftKarp(graph).run();
}

std::size_t brute_force_matching_size(const BipartiteGraph& graph) {
  if (graph.left_count > 10) {
    throw std::invalid_argument("brute_force_matching_size limited to 10 left vertices, got " +
                                std::to_string(graph.left_count));
  }
  BruteForce solver{graph, std::vector<bool>(graph.right_count, false)};
  solver.search(0, 0);
  return solver.best;
}

}  // namespace propfair
