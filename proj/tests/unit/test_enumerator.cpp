#include <doctest.h>

#include <map>

#include "helpers.hpp"
#include "uss/enumerator.hpp"
#include "uss/workbench.hpp"

using namespace uss;
using uss::testing::bounded_sums;
using uss::testing::memo_keys;
using uss::testing::vals;

namespace {

std::map<SumValue, std::uint64_t> memo_map(const MemoTable& memo) {
  std::map<SumValue, std::uint64_t> out;
  memo.for_each([&](const MemoTable::Entry& e) { out[e.sum()] = e.mask; });
  return out;
}

void check_stats_identity(const ColumnStats& s) {
  REQUIRE(s.candidates_generated ==
          s.new_sums_admitted + s.collisions_pruned + s.canonical_replacements);
}

// Split drawn from a small value range so collisions are frequent.
std::vector<SumValue> dense_split(SplitMix64& rng, int m) {
  std::vector<SumValue> out;
  const std::uint64_t range = 1 + rng.below(3 * static_cast<std::uint64_t>(m));
  for (int i = 0; i < m; ++i) out.push_back(1 + rng.below(range));
  return out;
}

}  // namespace

TEST_SUITE("enumerator") {

TEST_CASE("first column admits every singleton") {
  SplitEnumerator en(0, vals({1, 2, 3}), {}, 3);
  std::vector<StateId> out;
  ColumnStats stats;
  std::vector<std::pair<SumValue, std::uint64_t>> admitted;
  en.expand(en.make_root(), out, stats, [&](const PartialState& s, bool) {
    admitted.emplace_back(s.sum, s.mask);
    return false;
  });
  CHECK(admitted == std::vector<std::pair<SumValue, std::uint64_t>>{{1, 0b001}, {2, 0b010}, {3, 0b100}});
  CHECK(stats.new_sums_admitted == 3);
  CHECK(out.size() == 3);
}

TEST_CASE("colliding non-canonical candidate is pruned") {
  SplitEnumerator en(0, vals({1, 1, 2}), {}, 3);
  std::vector<StateId> out;
  ColumnStats stats;
  en.expand(en.make_root(), out, stats, [](const PartialState&, bool) { return false; });
  CHECK(stats.new_sums_admitted == 2);
  CHECK(stats.collisions_pruned == 1);
  CHECK(en.memo().find(1)->mask == 0b001);
  CHECK(en.memo().find(2)->mask == 0b100);
}

TEST_CASE("canonical replacement flags the superseded representative") {
  SplitEnumerator en(0, vals({1, 2, 3}), {}, 3);
  ColumnStats stats;
  const StateId late = en.offer(3, 0b100, stats);  // {2}
  REQUIRE(late != kNoState);
  // {0,1} has a different size, so the pending {2} keeps its extensions.
  const StateId winner = en.offer(3, 0b011, stats);
  CHECK(en.memo().find(3)->mask == 0b011);
  CHECK(en.memo().find(3)->state == winner);
  CHECK(stats.canonical_replacements == 1);
  CHECK_FALSE(en.state(late).do_not_extend);

  // Same size, still pending: flagged and never expanded.
  SplitEnumerator same(0, vals({1, 4, 2, 3}), {}, 4);
  ColumnStats s2;
  const StateId loser = same.offer(5, 0b1100, s2);  // {2,3}
  same.offer(5, 0b0011, s2);                         // {0,1}
  CHECK(same.state(loser).do_not_extend);
  CHECK_FALSE(same.expandable(loser));
}

TEST_CASE("final representative does not depend on arrival order") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    EnumOptions options;
    options.shuffle_seed = seed;
    const auto r = enumerate_split(vals({1, 2, 3}), 3, {}, nullptr, {}, options);
    REQUIRE(r.memo.find(3)->mask == 0b011);
  }
}

TEST_CASE("enumerate_split examples") {
  const auto a = enumerate_split(vals({1, 2, 3}), 3);
  CHECK(memo_keys(a.memo) == std::set<SumValue>{1, 2, 3, 4, 5, 6});
  const auto b = enumerate_split(vals({1, 1, 2}), 3);
  CHECK(memo_keys(b.memo) == std::set<SumValue>{1, 2, 3, 4});
  CHECK(b.memo.size() == 4);
}

TEST_CASE("seeding resumes an enumeration") {
  const auto first = enumerate_split(vals({1, 2, 3}), 1);
  std::vector<SeedEntry> seeds;
  first.memo.for_each([&](const MemoTable::Entry& e) {
    seeds.emplace_back(e.sum(), SubsetMask{e.mask, 3});
  });
  const auto resumed = enumerate_split(vals({1, 2, 3}), 3, seeds);
  const auto oneshot = enumerate_split(vals({1, 2, 3}), 3);
  CHECK(memo_map(resumed.memo) == memo_map(oneshot.memo));

  SplitMix64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = 2 + static_cast<int>(rng.below(11));
    const auto split = dense_split(rng, m);
    const int k1 = static_cast<int>(rng.below(m / 2 + 1));
    const auto part = enumerate_split(split, k1);
    std::vector<SeedEntry> s;
    part.memo.for_each([&](const MemoTable::Entry& e) { s.emplace_back(e.sum(), SubsetMask{e.mask, m}); });
    REQUIRE(memo_map(enumerate_split(split, m / 2, s).memo) == memo_map(enumerate_split(split, m / 2).memo));
  }
}

TEST_CASE("inconsistent seeds are rejected") {
  CHECK_THROWS_AS(enumerate_split(vals({1, 2, 3}), 3, {{SumValue{4}, SubsetMask::of({0, 1}, 3)}}),
                  InputError);
  CHECK_THROWS_AS(enumerate_split(vals({1, 2, 3}), 3, {{SumValue{3}, SubsetMask::of({0, 1}, 4)}}),
                  InputError);
  CHECK_THROWS_AS(enumerate_split(vals({1, 2, 3}), 4), ContractViolation);
}

TEST_CASE("sink sees each admission once") {
  std::map<SumValue, int> seen;
  int replacements = 0;
  const auto r = enumerate_split(vals({3, 1, 2, 2, 5, 4}), 6, {}, nullptr,
                                 [&](SumValue s, const SubsetMask&, bool replaced) {
                                   if (replaced) ++replacements;
                                   else ++seen[s];
                                 });
  CHECK(seen.size() == r.memo.size());
  for (const auto& [sum, count] : seen) CHECK(count == 1);
  CHECK(replacements == static_cast<int>(r.totals.canonical_replacements));
}

TEST_CASE("completeness at full enumeration against the oracle") {
  SplitMix64 rng(101);
  for (int trial = 0; trial < 400; ++trial) {
    const int m = 1 + static_cast<int>(rng.below(14));
    const auto split = trial % 2 ? dense_split(rng, m) : uss::testing::random_split(rng, m, 1 + static_cast<int>(rng.below(12)));
    const auto r = enumerate_split(split, m);
    auto keys = memo_keys(r.memo);
    keys.insert(0);
    const auto oracle = oracle_sumset(split);
    REQUIRE(std::vector<SumValue>(keys.begin(), keys.end()) == oracle);
    REQUIRE(r.memo.size() + 1 == oracle.size());
    check_stats_identity(r.totals);
    for (const auto& c : r.columns) check_stats_identity(c);
  }
}

TEST_CASE("complement coverage at half enumeration") {
  SplitMix64 rng(202);
  for (int trial = 0; trial < 400; ++trial) {
    const int m = 1 + static_cast<int>(rng.below(14));
    const auto split = dense_split(rng, m);
    const int half = m / 2;
    const auto r = enumerate_split(split, half);
    auto keys = memo_keys(r.memo);
    keys.insert(0);
    REQUIRE(keys == bounded_sums(split, half));
    SumValue total = 0;
    for (SumValue v : split) total += v;
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << m); ++b) {
      if (std::popcount(b) <= half) continue;
      REQUIRE(keys.count(total - sum_of_bits(b, split)) == 1);
    }
    REQUIRE(sumset_size_from_memo(r.memo, total) == oracle_sumset(split).size());
  }
}

TEST_CASE("canonical stability under shuffled expansion order") {
  SplitMix64 rng(303);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = 2 + static_cast<int>(rng.below(13));
    const auto split = dense_split(rng, m);
    for (int max_k : {m / 2, m}) {
      const auto base = memo_map(enumerate_split(split, max_k).memo);
      for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        EnumOptions options;
        options.shuffle_seed = seed * 7919 + static_cast<std::uint64_t>(trial);
        REQUIRE(memo_map(enumerate_split(split, max_k, {}, nullptr, {}, options).memo) == base);
      }
      // The stored mask is the colex-minimum subset of bounded size.
      std::map<SumValue, std::uint64_t> best;
      for (std::uint64_t b = 1; b < (std::uint64_t{1} << m); ++b) {
        if (std::popcount(b) > max_k) continue;
        const SumValue s = sum_of_bits(b, split);
        auto it = best.find(s);
        if (it == best.end() || b < it->second) best[s] = b;
      }
      best.erase(0);
      REQUIRE(base == best);
    }
  }
}

TEST_CASE("output sensitivity") {
  SplitMix64 rng(404);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = 2 + static_cast<int>(rng.below(13));
    const auto split = dense_split(rng, m);
    const auto r = enumerate_split(split, m / 2);
    const ColumnStats& t = r.totals;
    REQUIRE(t.states_expanded <= t.new_sums_admitted + t.canonical_replacements + r.shadows + 1);
    REQUIRE(r.shadows == 0);  // column order never needs shadow expansions
  }
}

TEST_CASE("flagged representatives are never expanded") {
  SplitMix64 rng(505);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 3 + static_cast<int>(rng.below(10));
    const auto split = dense_split(rng, m);
    SplitEnumerator en(0, split, {}, m);
    std::vector<StateId> input{en.make_root()}, output;
    ColumnStats stats;
    while (!input.empty()) {
      for (StateId id : input) {
        if (!en.expandable(id)) {
          REQUIRE_FALSE(en.state(id).expanded);
          continue;
        }
        en.expand(id, output, stats, [](const PartialState&, bool) { return false; });
      }
      input.swap(output);
      output.clear();
    }
    for (std::size_t id = 0; id < en.state_count(); ++id) {
      const PartialState& s = en.state(static_cast<StateId>(id));
      REQUIRE_FALSE((s.do_not_extend && s.expanded));
    }
  }
}

TEST_CASE("memo keeps one entry per sum after every column") {
  SplitMix64 rng(606);
  const auto split = dense_split(rng, 14);
  std::map<SumValue, int> counts;
  const auto r = enumerate_split(split, 7);
  r.memo.for_each([&](const MemoTable::Entry& e) { ++counts[e.sum()]; });
  for (const auto& [sum, c] : counts) CHECK(c == 1);
  CHECK(counts.size() == r.memo.size());
}

TEST_CASE("folded counting convention") {
  // Dissociative split of 6 powers of two: 64 sums, 31 below the midpoint.
  const auto split = vals({1, 2, 4, 8, 16, 32});
  const auto r = enumerate_split(split, 3);
  CHECK(sumset_size_from_memo(r.memo, 63) == 64);
  CHECK(folded_unique_count(r.memo, 63) == 31);

  SplitMix64 rng(707);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = 1 + static_cast<int>(rng.below(12));
    const auto s = dense_split(rng, m);
    SumValue total = 0;
    for (SumValue v : s) total += v;
    const auto sigma = oracle_sumset(s);
    std::uint64_t folded = 0;
    for (SumValue v : sigma)
      if (v != 0 && 2 * v <= total) ++folded;
    REQUIRE(folded_unique_count(enumerate_split(s, m / 2).memo, total) == folded);
  }
}

TEST_CASE("litmus probe") {
  CHECK(binomial(24, 4) == 10626);
  std::vector<SumValue> m24;
  for (int i = 0; i < 24; ++i) m24.push_back(SumValue{1} << (i + 30));
  const ProbeReport p = litmus_probe(m24);
  CHECK(p.subsets_enumerated == 12951);
  CHECK(p.unique_sums == 12951);

  const ProbeReport small = litmus_probe(vals({1, 2, 3, 4, 5}), 2);
  CHECK(small.subsets_enumerated == 16);
  CHECK(small.unique_sums == 10);
  CHECK(small.collision_rate == doctest::Approx(6.0 / 16.0));

  const ProbeReport powers = litmus_probe(vals({1, 2, 4, 8}), 4);
  CHECK(powers.subsets_enumerated == 16);
  CHECK(powers.collision_rate == 0.0);
  CHECK_THROWS_AS(litmus_probe(vals({1, 2}), 0), ContractViolation);

  SplitMix64 rng(808);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + static_cast<int>(rng.below(14));
    const int k = 1 + static_cast<int>(rng.below(5));
    const auto s = dense_split(rng, m);
    const ProbeReport r = litmus_probe(s, k);
    std::uint64_t expect = 0;
    for (int i = 0; i <= k; ++i) expect += binomial(m, i);
    REQUIRE(r.subsets_enumerated == expect);
    REQUIRE(r.unique_sums == bounded_sums(s, k).size());
    REQUIRE(r.collision_rate == doctest::Approx(1.0 - double(r.unique_sums) / double(expect)));
  }
}

}
