#include <doctest.h>

#include "helpers.hpp"
#include "uss/core.hpp"
#include "uss/workbench.hpp"

using namespace uss;
using uss::testing::vals;

TEST_SUITE("core") {

TEST_CASE("decimal conversion round-trips beyond 64 bits") {
  const SumValue big = (SumValue{1} << 100) - 1;
  CHECK(to_string(big) == "1267650600228229401496703205375");
  CHECK(parse_sum("1267650600228229401496703205375") == big);
  CHECK(to_string(0) == "0");
  CHECK_THROWS_AS(parse_sum("12a"), InputError);
  CHECK_THROWS_AS(parse_sum(""), InputError);
  CHECK_THROWS_AS(parse_sum("999999999999999999999999999999999999999999"), InputError);
  CHECK(bit_length(1) == 1);
  CHECK(bit_length(SumValue{1} << 99) == 100);
}

TEST_CASE("instance validation") {
  Instance ok{vals({1, 2, 3}), 4};
  CHECK_NOTHROW(ok.validate());
  CHECK_THROWS_AS((Instance{vals({1, 0}), 1}.validate()), InputError);
  CHECK_THROWS_AS((Instance{vals({1, 2}), 0}.validate()), InputError);
  CHECK_THROWS_AS((Instance{vals({1, 2}), 4}.validate()), InputError);
  CHECK_THROWS_AS((Instance{{}, 1}.validate()), InputError);
  CHECK_THROWS_AS((Instance{{SumValue{1} << 100}, 1}.validate()), InputError);
}

TEST_CASE("canonical order examples") {
  CHECK(canonical_less(SubsetMask::of({}, 4), SubsetMask::of({0}, 4)));
  // Colex: {1,2} = 0b0110 precedes {0,3} = 0b1001 because index 3 is the
  // largest difference and {1,2} lacks it.
  CHECK_FALSE(canonical_less(SubsetMask::of({0, 3}, 4), SubsetMask::of({1, 2}, 4)));
  CHECK(canonical_less(SubsetMask::of({1, 2}, 4), SubsetMask::of({0, 3}, 4)));
  CHECK_FALSE(canonical_less(SubsetMask::of({1, 2}, 4), SubsetMask::of({1, 2}, 4)));
  CHECK_THROWS_AS(canonical_less(SubsetMask::of({0}, 3), SubsetMask::of({0}, 4)), ContractViolation);
  CHECK_THROWS_AS(SubsetMask::of({4}, 4), ContractViolation);
}

TEST_CASE("canonical order is a strict total order") {
  SplitMix64 rng(7);
  for (int i = 0; i < 100000; ++i) {
    const SubsetMask a{rng.next() & 0xFFFF, 16};
    const SubsetMask b{rng.next() & 0xFFFF, 16};
    const SubsetMask c{rng.next() & 0xFFFF, 16};
    const int relations = canonical_less(a, b) + canonical_less(b, a) + (a == b);
    REQUIRE(relations == 1);
    if (canonical_less(a, b) && canonical_less(b, c)) REQUIRE(canonical_less(a, c));
  }
}

TEST_CASE("complement examples") {
  CHECK(mask_complement(SubsetMask::of({0, 3}, 4)) == SubsetMask::of({1, 2}, 4));
  CHECK(mask_complement(SubsetMask::of({}, 4)) == SubsetMask::of({0, 1, 2, 3}, 4));
  CHECK(mask_complement(SubsetMask::of({0, 1, 2}, 6)) == SubsetMask::of({3, 4, 5}, 6));
  CHECK(mask_complement(SubsetMask{full_bits(64), 64}).bits == 0);
}

TEST_CASE("true sum examples and complement property") {
  CHECK(true_sum(SubsetMask::of({0, 2}, 3), vals({1, 2, 3})) == 4);
  CHECK(true_sum(SubsetMask::of({}, 3), vals({1, 2, 3})) == 0);
  CHECK(true_sum(SubsetMask::of({1, 3}, 4), vals({7, 11, 13, 17})) == 28);
  CHECK_THROWS_AS(true_sum(SubsetMask::of({0}, 2), vals({1, 2, 3})), ContractViolation);

  SplitMix64 rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const int m = 1 + static_cast<int>(rng.below(64));
    const auto split = uss::testing::random_split(rng, m, 100);
    const SubsetMask a{rng.next() & full_bits(m), m};
    const SubsetMask full{full_bits(m), m};
    REQUIRE(true_sum(a, split) + true_sum(mask_complement(a), split) == true_sum(full, split));
    REQUIRE(mask_complement(a).size() == m - a.size());
  }
}

TEST_CASE("combine maps split indices back to the instance") {
  // Alternating split of [1,2,3,4]: l0 = [1,3] at {0,2}, l1 = [2,4] at {1,3}.
  const std::vector<int> p0{0, 2}, p1{1, 3};
  CHECK(combine(SubsetMask::of({0}, 2), SubsetMask::of({1}, 2), p0, p1) == std::vector<int>{0, 3});
  CHECK(combine(SubsetMask::of({}, 2), SubsetMask::of({}, 2), p0, p1).empty());
  CHECK(combine(SubsetMask::of({0, 1}, 2), SubsetMask::of({0, 1}, 2), p0, p1) ==
        std::vector<int>{0, 1, 2, 3});

  SplitMix64 rng(3);
  std::vector<int> q0, q1;
  for (int i = 0; i < 40; ++i) (i % 2 ? q1 : q0).push_back(i);
  for (int t = 0; t < 1000; ++t) {
    const SubsetMask a{rng.next() & full_bits(20), 20}, b{rng.next() & full_bits(20), 20};
    REQUIRE(static_cast<int>(combine(a, b, q0, q1).size()) == a.size() + b.size());
  }
}

TEST_CASE("memo table basics") {
  MemoTable memo;
  for (std::uint64_t i = 1; i <= 5000; ++i) memo.insert(SumValue{i} << 70 | i, i, kNoState);
  CHECK(memo.size() == 5000);
  CHECK(memo.insertions() == 5000);
  CHECK(memo.contains(SumValue{77} << 70 | 77));
  CHECK_FALSE(memo.contains(77));
  CHECK(memo.find(SumValue{9} << 70 | 9)->mask == 9);
  const auto sorted = memo.sorted_entries();
  CHECK(std::is_sorted(sorted.begin(), sorted.end(),
                       [](const auto& a, const auto& b) { return a.sum() < b.sum(); }));
  memo.clear();
  CHECK(memo.size() == 0);
}

}
