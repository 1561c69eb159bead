#include "uss/aliasing.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace uss {

std::uint64_t AliasPlan::alias_bits() const {
  std::uint64_t bits = 0;
  for (const AliasPair& p : pairs) bits |= (std::uint64_t{1} << p.keep) | (std::uint64_t{1} << p.alias);
  return bits;
}

std::vector<SumValue> AliasPlan::delta_offsets() const {
  std::vector<SumValue> out{0};
  for (const AliasPair& p : pairs) {
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) out.push_back(out[i] + p.delta);
  }
  return out;
}

AliasPlan plan_alias(const std::vector<SumValue>& split, int count, int split_id) {
  if (count < 0 || count > 2) throw ContractViolation("alias count must be 0, 1 or 2");
  AliasPlan plan;
  plan.split_id = split_id;
  if (count == 0) return plan;
  if (static_cast<int>(split.size()) < 2 * count)
    throw ContractViolation("split too small for the requested alias pairs");

  std::vector<int> order(split.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return split[a] < split[b]; });
  std::vector<bool> used(split.size(), false);
  for (int p = 0; p < count; ++p) {
    int keep = -1, alias = -1;
    for (int i : order) {
      if (used[i]) continue;
      if (keep < 0) {
        keep = i;
      } else if (split[i] != split[keep]) {
        alias = i;
        break;
      }
    }
    if (alias < 0) throw ContractViolation("not enough distinct values to alias");
    used[keep] = used[alias] = true;
    plan.pairs.push_back({keep, alias, split[alias] - split[keep]});
  }
  return plan;
}

SumValue aliased_value(int index, const std::vector<SumValue>& split, const AliasPlan& plan) {
  if (index < 0 || index >= static_cast<int>(split.size()))
    throw ContractViolation("aliased_value: index out of range");
  for (const AliasPair& p : plan.pairs)
    if (p.alias == index) return split[p.keep];
  return split[index];
}

std::vector<SumValue> aliased_values(const std::vector<SumValue>& split, const AliasPlan& plan) {
  std::vector<SumValue> out(split);
  for (const AliasPair& p : plan.pairs) out[p.alias] = split[p.keep];
  return out;
}

std::vector<Resolution> resolve_candidates(SumValue aliased_sum, const SubsetMask& mask,
                                           const AliasPlan& plan) {
  SumValue base = aliased_sum;
  for (const AliasPair& p : plan.pairs)
    if (mask.contains(p.alias)) base += p.delta;
  std::vector<Resolution> out{{base, mask}};
  for (const AliasPair& p : plan.pairs) {
    const bool has_keep = mask.contains(p.keep);
    const bool has_alias = mask.contains(p.alias);
    if (has_keep == has_alias) continue;
    const std::uint64_t flip = (std::uint64_t{1} << p.keep) | (std::uint64_t{1} << p.alias);
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) {
      Resolution r = out[i];
      r.mask.bits ^= flip;
      // Swapping x1 out for x0 removes delta; swapping it in adds delta.
      r.true_sum = has_alias ? r.true_sum - p.delta : r.true_sum + p.delta;
      out.push_back(r);
    }
  }
  return out;
}

bool toggle_equivalent(std::uint64_t a, std::uint64_t b, const AliasPlan& plan) {
  const std::uint64_t pair_bits = plan.alias_bits();
  if ((a & ~pair_bits) != (b & ~pair_bits)) return false;
  for (const AliasPair& p : plan.pairs) {
    const std::uint64_t bits = (std::uint64_t{1} << p.keep) | (std::uint64_t{1} << p.alias);
    if (std::popcount(a & bits) != std::popcount(b & bits)) return false;
  }
  return true;
}

}  // namespace uss
