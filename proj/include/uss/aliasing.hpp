#pragma once

#include <utility>
#include <vector>

#include "uss/core.hpp"

namespace uss {

struct AliasPair {
  int keep = 0;   // x0, the smaller value
  int alias = 0;  // x1, counted as if it were x0
  SumValue delta = 0;  // value(x1) - value(x0), always > 0
};

struct AliasPlan {
  std::vector<AliasPair> pairs;
  int split_id = 0;

  bool empty() const { return pairs.empty(); }
  std::uint64_t alias_bits() const;
  // Every sum of a subset of the deltas, starting with 0.
  std::vector<SumValue> delta_offsets() const;
};

AliasPlan plan_alias(const std::vector<SumValue>& split, int count, int split_id = 0);
SumValue aliased_value(int index, const std::vector<SumValue>& split, const AliasPlan& plan);
std::vector<SumValue> aliased_values(const std::vector<SumValue>& split, const AliasPlan& plan);

struct Resolution {
  SumValue true_sum = 0;
  SubsetMask mask;
};

// The untoggled mask comes first.
std::vector<Resolution> resolve_candidates(SumValue aliased_sum, const SubsetMask& mask,
                                           const AliasPlan& plan);

// True when b is a's mask with some x0/x1 memberships swapped, i.e. the
// resolution sets of the two masks coincide.
bool toggle_equivalent(std::uint64_t a, std::uint64_t b, const AliasPlan& plan);

}  // namespace uss
