#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "uss/core.hpp"
#include "uss/enumerator.hpp"

namespace uss {

struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

// n / log2(max element), in double precision (about 1e-12 relative).
double density(const std::vector<SumValue>& elements);
// |S + S| / |S| over distinct values, reduced.
Rational doubling_constant(const std::vector<SumValue>& elements);
// Ordered quadruples (a, b, c, d) with a + b = c + d, multiset semantics.
std::uint64_t additive_energy(const std::vector<SumValue>& elements);
std::uint64_t duplicate_count(const std::vector<SumValue>& elements);

// Probe counts plus the structural measures above.
ProbeReport analyze(const std::vector<SumValue>& elements, int k_cap = 4);

using Swap = std::pair<int, int>;  // (index in l0, index in l1)

// Greedy swaps, each strictly shrinking the gap between the two halves'
// probe collision rates. Returns the swaps in the order applied.
std::vector<Swap> suggest_rebalance(const std::vector<SumValue>& l0,
                                    const std::vector<SumValue>& l1, int k_cap = 4);

}  // namespace uss
