#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optional>
#include <stdexcept>

#include "propfair/distributions.hpp"
#include "propfair/exact_checker.hpp"
#include "propfair/experiments.hpp"
#include "propfair/rng.hpp"

using namespace propfair;

namespace {

// Test-only oracle: walk all n^m assignments with an odometer. Deliberately
// shares no code with the branch-and-bound path.
std::optional<Allocation> enumerate_proportional(const Instance& inst) {
  const std::size_t n = inst.agents();
  const std::size_t m = inst.goods();
  Allocation alloc{std::vector<std::size_t>(m, 0)};
  while (true) {
    if (is_proportional(inst, alloc)) return alloc;
    std::size_t g = 0;
    while (g < m && ++alloc.owner[g] == n) {
      alloc.owner[g] = 0;
      ++g;
    }
    if (g == m) return std::nullopt;
  }
}

Instance random_instance(SplitMix64& rng, std::size_t n, std::size_t m) {
  std::vector<double> u(n * m);
  for (double& x : u) x = rng.next_unit();
  return Instance(n, m, std::move(u));
}

}  // namespace

TEST_CASE("one contested good cannot be split") {
  const Instance intro = Instance::from_rows({{1}, {1}});
  const ExistenceResult result = exists_proportional(intro);
  CHECK(result.verdict == ExistVerdict::kNo);
  CHECK_FALSE(result.witness.has_value());
}

TEST_CASE("identity instance has an obvious witness") {
  const Instance identity = Instance::from_rows({{1, 0}, {0, 1}});
  const ExistenceResult result = exists_proportional(identity);
  REQUIRE(result.verdict == ExistVerdict::kYes);
  CHECK(is_proportional(identity, *result.witness));
}

TEST_CASE("tight-support instances with m = 2n-1 never work") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Instance inst = remark1_instance(3, seed);
    CHECK(exists_proportional(inst).verdict == ExistVerdict::kNo);
  }
}

TEST_CASE("size limits and node budget") {
  const Instance big = sample_instance(DistributionSpec::uniform(0.0, 1.0), 7, 7, 1);
  CHECK_THROWS_AS(exists_proportional(big), std::invalid_argument);

  const Instance wide = sample_instance(DistributionSpec::uniform(0.0, 1.0), 2, 21, 1);
  CHECK_THROWS_AS(exists_proportional(wide), std::invalid_argument);

  // A starved budget must surface as kBudgetExceeded, never as kNo, even on
  // an instance whose true verdict is Yes.
  const Instance identity = Instance::from_rows({{1, 0}, {0, 1}});
  SearchLimits tiny;
  tiny.node_budget = 1;
  const ExistenceResult result = exists_proportional(identity, tiny);
  CHECK(result.verdict == ExistVerdict::kBudgetExceeded);
  CHECK(result.nodes > 0);
}

TEST_CASE("branch and bound agrees with full enumeration") {
  SplitMix64 rng(555);
  std::size_t yes_count = 0;
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t n = 2 + rng.next_below(2);
    const std::size_t m = rng.next_below(10);
    const Instance inst = random_instance(rng, n, m);
    const auto expected = enumerate_proportional(inst);
    const ExistenceResult got = exists_proportional(inst);
    REQUIRE(got.verdict != ExistVerdict::kBudgetExceeded);
    CHECK((got.verdict == ExistVerdict::kYes) == expected.has_value());
    if (got.verdict == ExistVerdict::kYes) {
      ++yes_count;
      CHECK(is_proportional(inst, *got.witness));
    }
  }
  CHECK(yes_count > 20);  // both verdicts must actually occur
  CHECK(yes_count < 180);
}

TEST_CASE("matching case: applicability") {
  const Instance rect = Instance::from_rows({{0.5, 0.5, 0.5}, {0.5, 0.5, 0.5}});
  CHECK(exists_proportional_matching_case(rect).verdict == MatchingCaseVerdict::kNotApplicable);

  // A zero row means an empty bundle satisfies that agent; the one-good-each
  // argument breaks down.
  const Instance zero_row = Instance::from_rows({{0.0, 0.0}, {0.5, 0.5}});
  CHECK(exists_proportional_matching_case(zero_row).verdict ==
        MatchingCaseVerdict::kNotApplicable);
}

TEST_CASE("matching case: square verdicts") {
  const Instance identity = Instance::from_rows({{1, 0}, {0, 1}});
  const MatchingCaseResult yes = exists_proportional_matching_case(identity);
  REQUIRE(yes.verdict == MatchingCaseVerdict::kYes);
  CHECK(is_proportional(identity, *yes.witness));

  // Shares equal the per-good value exactly; edges appear everywhere.
  const Instance flat = Instance::from_rows({{0.6, 0.6}, {0.6, 0.6}});
  CHECK(exists_proportional_matching_case(flat).verdict == MatchingCaseVerdict::kYes);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Instance inst = remark2_instance(4, seed);
    CHECK(exists_proportional_matching_case(inst).verdict == MatchingCaseVerdict::kNo);
  }
}

TEST_CASE("matching case agrees with branch and bound where applicable") {
  SplitMix64 rng(808);
  std::size_t applicable = 0;
  for (int iter = 0; iter < 300; ++iter) {
    const std::size_t n = 2 + rng.next_below(4);
    const Instance inst = random_instance(rng, n, n);
    const MatchingCaseResult fast = exists_proportional_matching_case(inst);
    if (fast.verdict == MatchingCaseVerdict::kNotApplicable) continue;
    ++applicable;
    const ExistenceResult slow = exists_proportional(inst);
    REQUIRE(slow.verdict != ExistVerdict::kBudgetExceeded);
    CHECK((fast.verdict == MatchingCaseVerdict::kYes) == (slow.verdict == ExistVerdict::kYes));
    if (fast.verdict == MatchingCaseVerdict::kYes) {
      CHECK(is_proportional(inst, *fast.witness));
    }
  }
  CHECK(applicable > 250);
}

TEST_CASE("allocator success implies oracle yes") {
  const DistributionSpec dist = DistributionSpec::uniform(0.0, 1.0);
  AllocatorConfig cfg;
  cfg.margin = margin_for(dist, 0.3);
  cfg.mean = dist.mean();
  std::size_t checked = 0;
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const Instance inst = sample_instance(dist, 4, 4, mix64(3, seed));
    const AllocatorOutcome outcome = theorem1_allocate(inst, cfg);
    if (!outcome.success()) continue;
    ++checked;
    CHECK(exists_proportional(inst).verdict == ExistVerdict::kYes);
  }
  CHECK(checked > 5);
}
