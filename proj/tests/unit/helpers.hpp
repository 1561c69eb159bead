#pragma once

#include <algorithm>
#include <bit>
#include <set>
#include <vector>

#include <doctest.h>

#include "uss/core.hpp"
#include "uss/memo.hpp"
#include "uss/workbench.hpp"

namespace uss::testing {

inline std::vector<SumValue> vals(std::initializer_list<unsigned long long> xs) {
  std::vector<SumValue> out;
  for (auto x : xs) out.push_back(x);
  return out;
}

inline std::set<SumValue> memo_keys(const MemoTable& memo) {
  std::set<SumValue> out;
  memo.for_each([&](const MemoTable::Entry& e) { out.insert(e.sum()); });
  return out;
}

// Sums reachable with at most max_k elements, brute force.
inline std::set<SumValue> bounded_sums(const std::vector<SumValue>& split, int max_k) {
  std::set<SumValue> out;
  const int m = static_cast<int>(split.size());
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << m); ++b)
    if (std::popcount(b) <= max_k) out.insert(sum_of_bits(b, split));
  return out;
}

inline std::vector<SumValue> random_split(SplitMix64& rng, int m, int w) {
  std::vector<SumValue> out;
  for (int i = 0; i < m; ++i) out.push_back(rng.exact_bits(w));
  return out;
}

}  // namespace uss::testing
