#include "propfair/core_model.hpp"

#include <stdexcept>
#include <string>

namespace propfair {

namespace {

void check_agent(const Instance& inst, std::size_t agent) {
  if (agent >= inst.agents()) {
    throw std::out_of_range("agent index " + std::to_string(agent) +
                            " out of range for n=" + std::to_string(inst.agents()));
  }
}

void check_allocation(const Instance& inst, const Allocation& alloc) {
  if (alloc.owner.size() != inst.goods()) {
    throw std::invalid_argument("allocation covers " + std::to_string(alloc.owner.size()) +
                                " goods, instance has " + std::to_string(inst.goods()));
  }
  for (std::size_t g = 0; g < alloc.owner.size(); ++g) {
    if (alloc.owner[g] >= inst.agents()) {
      throw std::invalid_argument("good " + std::to_string(g) + " assigned to agent " +
                                  std::to_string(alloc.owner[g]) + ", instance has n=" +
                                  std::to_string(inst.agents()));
    }
  }
}

}  // namespace

Instance::Instance(std::size_t agents, std::size_t goods, std::vector<double> utilities)
    : agents_(agents), goods_(goods), utilities_(std::move(utilities)) {
  if (agents_ == 0) {
    throw std::invalid_argument("instance needs at least one agent");
  }
  if (utilities_.size() != agents_ * goods_) {
    throw std::invalid_argument("utility matrix has " + std::to_string(utilities_.size()) +
                                " entries, expected " + std::to_string(agents_ * goods_) +
                                " (n=" + std::to_string(agents_) + ", m=" + std::to_string(goods_) + ")");
  }
  for (std::size_t i = 0; i < agents_; ++i) {
    for (std::size_t g = 0; g < goods_; ++g) {
      const double u = utilities_[i * goods_ + g];
      if (!(u >= 0.0 && u <= 1.0)) {  // also rejects NaN
        throw std::invalid_argument("utility[" + std::to_string(i) + "][" + std::to_string(g) +
                                    "] = " + std::to_string(u) + " outside [0, 1]");
      }
    }
  }
}

Instance Instance::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  const std::size_t m = rows.empty() ? 0 : rows.front().size();
  std::vector<double> flat;
  flat.reserve(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != m) {
      throw std::invalid_argument("utility row " + std::to_string(i) + " has " +
                                  std::to_string(rows[i].size()) + " entries, expected " +
                                  std::to_string(m));
    }
    flat.insert(flat.end(), rows[i].begin(), rows[i].end());
  }
  return Instance(n, m, std::move(flat));
}

bool allocation_valid(const Instance& inst, const Allocation& alloc) {
  if (alloc.owner.size() != inst.goods()) return false;
  for (const std::size_t a : alloc.owner) {
    if (a >= inst.agents()) return false;
  }
  return true;
}

double bundle_utility(const Instance& inst, const Allocation& alloc, std::size_t agent) {
  check_agent(inst, agent);
  check_allocation(inst, alloc);
  double sum = 0.0;
  for (std::size_t g = 0; g < inst.goods(); ++g) {
    if (alloc.owner[g] == agent) sum += inst.utility(agent, g);
  }
  return sum;
}

double total_utility(const Instance& inst, std::size_t agent) {
  check_agent(inst, agent);
  double sum = 0.0;
  for (std::size_t g = 0; g < inst.goods(); ++g) {
    sum += inst.utility(agent, g);
  }
  return sum;
}

double proportional_share(const Instance& inst, std::size_t agent) {
  return total_utility(inst, agent) / static_cast<double>(inst.agents());
}

bool is_proportional(const Instance& inst, const Allocation& alloc) {
  check_allocation(inst, alloc);
  for (std::size_t i = 0; i < inst.agents(); ++i) {
    if (bundle_utility(inst, alloc, i) < proportional_share(inst, i) - kFairnessTol) {
      return false;
    }
  }
  return true;
}

bool is_envy_free(const Instance& inst, const Allocation& alloc) {
  check_allocation(inst, alloc);
  const std::size_t n = inst.agents();
  // value[i][j]: agent i's utility for agent j's bundle, one pass per agent.
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> value(n, 0.0);
    for (std::size_t g = 0; g < inst.goods(); ++g) {
      value[alloc.owner[g]] += inst.utility(i, g);
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (value[i] < value[j] - kFairnessTol) return false;
    }
  }
  return true;
}

}  // namespace propfair
