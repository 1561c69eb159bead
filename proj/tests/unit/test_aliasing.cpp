#include <doctest.h>

#include "helpers.hpp"
#include "uss/aliasing.hpp"
#include "uss/enumerator.hpp"
#include "uss/solver.hpp"
#include "uss/workbench.hpp"

using namespace uss;
using uss::testing::vals;

namespace {

// Random split whose subset sums are all distinct, checked exhaustively.
std::vector<SumValue> dissociative_split(SplitMix64& rng, int m) {
  for (;;) {
    const auto s = uss::testing::random_split(rng, m, 40);
    if (oracle_sumset(s).size() == (std::size_t{1} << m)) return s;
  }
}

}  // namespace

TEST_SUITE("aliasing") {

TEST_CASE("plan picks the two smallest distinct values") {
  const AliasPlan p = plan_alias(vals({3, 5, 8, 9}), 1);
  REQUIRE(p.pairs.size() == 1);
  CHECK(p.pairs[0].keep == 0);
  CHECK(p.pairs[0].alias == 1);
  CHECK(p.pairs[0].delta == 2);

  CHECK(plan_alias(vals({3, 5, 8, 9}), 0).empty());

  const AliasPlan skip = plan_alias(vals({4, 4, 7, 9}), 1);
  CHECK(skip.pairs[0].keep == 0);
  CHECK(skip.pairs[0].alias == 2);
  CHECK(skip.pairs[0].delta == 3);

  const AliasPlan two = plan_alias(vals({9, 3, 8, 5}), 2);
  REQUIRE(two.pairs.size() == 2);
  CHECK(two.pairs[0].keep == 1);
  CHECK(two.pairs[0].alias == 3);
  CHECK(two.pairs[1].keep == 2);
  CHECK(two.pairs[1].alias == 0);
  CHECK(two.delta_offsets() == vals({0, 2, 1, 3}));

  CHECK_THROWS_AS(plan_alias(vals({1, 2, 3}), 2), ContractViolation);
  CHECK_THROWS_AS(plan_alias(vals({1, 2, 3, 4, 5}), 3), ContractViolation);
  CHECK_THROWS_AS(plan_alias(vals({7, 7, 7, 7}), 1), ContractViolation);
}

TEST_CASE("aliased values") {
  const auto split = vals({3, 5, 8, 9});
  const AliasPlan p = plan_alias(split, 1);
  CHECK(aliased_value(1, split, p) == 3);
  CHECK(aliased_value(2, split, p) == 8);
  for (int i = 0; i < 4; ++i) CHECK(aliased_value(i, split, AliasPlan{}) == split[i]);
  CHECK(aliased_values(split, p) == vals({3, 3, 8, 9}));
  CHECK_THROWS_AS(aliased_value(4, split, p), ContractViolation);
}

TEST_CASE("resolution candidates") {
  const auto split = vals({3, 5, 8, 9});
  const AliasPlan p = plan_alias(split, 1);
  const auto r = resolve_candidates(3, SubsetMask::of({1}, 4), p);
  REQUIRE(r.size() == 2);
  CHECK(r[0].mask == SubsetMask::of({1}, 4));
  CHECK(r[0].true_sum == 5);
  CHECK(r[1].mask == SubsetMask::of({0}, 4));
  CHECK(r[1].true_sum == 3);

  const auto none = resolve_candidates(17, SubsetMask::of({2, 3}, 4), AliasPlan{});
  REQUIRE(none.size() == 1);
  CHECK(none[0].true_sum == 17);

  const auto both = resolve_candidates(6, SubsetMask::of({0, 1}, 4), p);
  REQUIRE(both.size() == 1);
  CHECK(both[0].true_sum == 8);

  // Every candidate's sum is its mask's true sum.
  SplitMix64 rng(9);
  for (int t = 0; t < 2000; ++t) {
    const int m = 4 + static_cast<int>(rng.below(12));
    const auto s = uss::testing::random_split(rng, m, 20);
    const AliasPlan plan = plan_alias(s, 1 + static_cast<int>(rng.below(2)));
    const SubsetMask mask{rng.next() & full_bits(m), m};
    const auto al = aliased_values(s, plan);
    for (const Resolution& c : resolve_candidates(sum_of_bits(mask.bits, al), mask, plan)) {
      REQUIRE(c.true_sum == true_sum(c.mask, s));
      REQUIRE(toggle_equivalent(mask.bits, c.mask.bits, plan));
      REQUIRE(sum_of_bits(c.mask.bits, al) == sum_of_bits(mask.bits, al));
    }
  }
}

TEST_CASE("one pair collapses a dissociative memo to three quarters") {
  SplitMix64 rng(21);
  for (int m : {4, 8, 12, 16, 20}) {
    const auto split = dissociative_split(rng, m);
    const auto plain = enumerate_split(split, m);
    REQUIRE(plain.memo.size() + 1 == (std::size_t{1} << m));
    for (int count : {1, 2}) {
      const AliasPlan plan = plan_alias(split, count);
      const auto aliased = enumerate_split(split, m, {}, &plan);
      // Sizes include the implicit empty sum.
      const std::size_t num = count == 1 ? 3 : 9, den = count == 1 ? 4 : 16;
      CHECK((aliased.memo.size() + 1) * den == (plain.memo.size() + 1) * num);
      CHECK_FALSE(aliased.ambiguous);
    }
  }
}

TEST_CASE("aliased decisions match the oracle") {
  SplitMix64 rng(33);
  int found = 0;
  for (int t = 0; t < 400; ++t) {
    const int n = 4 + static_cast<int>(rng.below(13));
    const int w = 3 + static_cast<int>(rng.below(14));
    Instance inst;
    for (int i = 0; i < n; ++i) inst.elements.push_back(1 + rng.below(std::uint64_t{1} << w));
    inst.target = 1 + static_cast<SumValue>(rng.below(static_cast<std::uint64_t>(inst.total())));
    SolverConfig config;
    config.alias_count = 1 + static_cast<int>(rng.below(2));
    config.anytime = t % 3 == 0;
    const Decision d = solve(inst, config);
    const bool expect = oracle_decide(inst.elements, inst.target);
    REQUIRE((d.outcome == Outcome::kFound) == expect);
    if (d.solution) {
      ++found;
      REQUIRE(verify_solution(d.solution->original_indices, inst, inst.target));
      REQUIRE(d.solution->verified_sum == inst.target);
    }
  }
  CHECK(found > 100);
}

}
