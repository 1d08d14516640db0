#include "propfair/exact_checker.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "propfair/matching.hpp"

namespace propfair {

namespace {

class BranchAndBound {
 public:
  BranchAndBound(const Instance& inst, std::uint64_t budget)
      : inst_(inst), budget_(budget), agents_(inst.agents()), goods_(inst.goods()) {
    shares_.resize(agents_);
    for (std::size_t i = 0; i < agents_; ++i) {
      shares_[i] = proportional_share(inst_, i);
    }

    // Branch on valuable goods first: failures surface near the root.
    order_.resize(goods_);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::vector<double> weight(goods_, 0.0);
    for (std::size_t g = 0; g < goods_; ++g) {
      for (std::size_t i = 0; i < agents_; ++i) {
        weight[g] = std::max(weight[g], inst_.utility(i, g));
      }
    }
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return weight[a] > weight[b]; });

    // residual_[t*n + i]: agent i's utility for order_[t..m), so the prune
    // check is an O(n) lookup per node.
    residual_.assign((goods_ + 1) * agents_, 0.0);
    for (std::size_t t = goods_; t-- > 0;) {
      for (std::size_t i = 0; i < agents_; ++i) {
        residual_[t * agents_ + i] =
            residual_[(t + 1) * agents_ + i] + inst_.utility(i, order_[t]);
      }
    }

    bundle_.assign(agents_, 0.0);
    owner_by_pos_.assign(goods_, 0);
  }

  ExistenceResult run() {
    ExistenceResult result;
    const bool found = search(0);
    result.nodes = nodes_;
    if (out_of_budget_) {
      result.verdict = ExistVerdict::kBudgetExceeded;
      return result;
    }
    if (!found) {
      result.verdict = ExistVerdict::kNo;
      return result;
    }
    result.verdict = ExistVerdict::kYes;
    Allocation witness{std::vector<std::size_t>(goods_, 0)};
    for (std::size_t t = 0; t < goods_; ++t) {
      witness.owner[order_[t]] = owner_by_pos_[t];
    }
    result.witness = std::move(witness);
    return result;
  }

 private:
  bool search(std::size_t t) {
    if (++nodes_ > budget_) {
      out_of_budget_ = true;
      return false;
    }
    const double* residual = &residual_[t * agents_];
    for (std::size_t i = 0; i < agents_; ++i) {
      if (bundle_[i] + residual[i] < shares_[i] - kFairnessTol) return false;
    }
    if (t == goods_) return true;  // the prune just verified every share
    const std::size_t good = order_[t];
    for (std::size_t a = 0; a < agents_; ++a) {
      bundle_[a] += inst_.utility(a, good);
      owner_by_pos_[t] = a;
      if (search(t + 1)) return true;
      bundle_[a] -= inst_.utility(a, good);
      if (out_of_budget_) return false;
    }
    return false;
  }

  const Instance& inst_;
  std::uint64_t budget_;
  std::size_t agents_;
  std::size_t goods_;
  std::vector<double> shares_;
  std::vector<std::size_t> order_;
  std::vector<double> residual_;
  std::vector<double> bundle_;
  std::vector<std::size_t> owner_by_pos_;
  std::uint64_t nodes_ = 0;
  bool out_of_budget_ = false;
};

}  // namespace

ExistenceResult exists_proportional(const Instance& inst, const SearchLimits& limits) {
  if (inst.agents() > limits.max_agents || inst.goods() > limits.max_goods) {
    throw std::invalid_argument("instance " + std::to_string(inst.agents()) + "x" +
                                std::to_string(inst.goods()) + " exceeds search limits " +
                                std::to_string(limits.max_agents) + "x" +
                                std::to_string(limits.max_goods));
  }
  return BranchAndBound(inst, limits.node_budget).run();
}

MatchingCaseResult exists_proportional_matching_case(const Instance& inst) {
  MatchingCaseResult result;
  const std::size_t n = inst.agents();
  if (inst.goods() != n) return result;

  std::vector<double> thresholds(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double share = proportional_share(inst, i);
    if (share <= kFairnessTol) return result;  // empty bundles enter play
    thresholds[i] = share - kFairnessTol;
  }

  std::vector<std::size_t> block(n);
  std::iota(block.begin(), block.end(), std::size_t{0});
  const Matching matching = maximum_matching(threshold_graph(inst, block, thresholds));
  if (matching.size() < n) {
    result.verdict = MatchingCaseVerdict::kNo;
    return result;
  }
  Allocation witness{std::vector<std::size_t>(n, 0)};
  for (std::size_t i = 0; i < n; ++i) {
    witness.owner[matching.pair_of_left[i]] = i;
  }
  result.verdict = MatchingCaseVerdict::kYes;
  result.witness = std::move(witness);
  return result;
}

}  // namespace propfair
