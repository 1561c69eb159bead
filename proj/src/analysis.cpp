#include "uss/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace uss {

namespace {

long double log2_of(SumValue v) {
  // Keep the top 64 significant bits; the rest only affects ~1e-19.
  const int bits = bit_length(v);
  if (bits <= 64) return std::log2(static_cast<long double>(static_cast<std::uint64_t>(v)));
  const int shift = bits - 64;
  return std::log2(static_cast<long double>(static_cast<std::uint64_t>(v >> shift))) + shift;
}

}  // namespace

double density(const std::vector<SumValue>& elements) {
  if (elements.empty()) throw ContractViolation("density of an empty set");
  const SumValue max = *std::max_element(elements.begin(), elements.end());
  if (max < 2) throw ContractViolation("density undefined: max element < 2");
  return static_cast<double>(static_cast<long double>(elements.size()) / log2_of(max));
}

Rational doubling_constant(const std::vector<SumValue>& elements) {
  if (elements.empty()) throw ContractViolation("doubling constant of an empty set");
  std::vector<SumValue> set(elements);
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  std::set<SumValue> sums;
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i; j < set.size(); ++j) sums.insert(set[i] + set[j]);
  Rational r{sums.size(), set.size()};
  const std::uint64_t g = std::gcd(r.num, r.den);
  r.num /= g;
  r.den /= g;
  return r;
}

std::uint64_t additive_energy(const std::vector<SumValue>& elements) {
  if (elements.empty()) throw ContractViolation("additive energy of an empty set");
  std::map<SumValue, std::uint64_t> reps;  // ordered pairs per sum
  for (SumValue a : elements)
    for (SumValue b : elements) ++reps[a + b];
  std::uint64_t energy = 0;
  for (const auto& [sum, r] : reps) energy += r * r;
  return energy;
}

std::uint64_t duplicate_count(const std::vector<SumValue>& elements) {
  std::vector<SumValue> set(elements);
  std::sort(set.begin(), set.end());
  return elements.size() - static_cast<std::size_t>(std::unique(set.begin(), set.end()) - set.begin());
}

ProbeReport analyze(const std::vector<SumValue>& elements, int k_cap) {
  ProbeReport report = litmus_probe(elements, k_cap);
  SumValue max = 0;
  for (SumValue v : elements) max = std::max(max, v);
  if (max >= 2) report.density = density(elements);
  const Rational c = doubling_constant(elements);
  report.doubling_num = c.num;
  report.doubling_den = c.den;
  report.additive_energy = additive_energy(elements);
  report.duplicate_count = duplicate_count(elements);
  return report;
}

std::vector<Swap> suggest_rebalance(const std::vector<SumValue>& l0_in,
                                    const std::vector<SumValue>& l1_in, int k_cap) {
  if (l0_in.empty() || l1_in.empty()) throw ContractViolation("rebalance needs two nonempty halves");
  std::vector<SumValue> l0(l0_in), l1(l1_in);
  auto gap = [&](const std::vector<SumValue>& a, const std::vector<SumValue>& b) {
    return std::fabs(litmus_probe(a, k_cap).collision_rate - litmus_probe(b, k_cap).collision_rate);
  };
  std::vector<Swap> swaps;
  double current = gap(l0, l1);
  const std::size_t limit = std::min(l0.size(), l1.size());
  while (swaps.size() < limit && current > 0.0) {
    double best = current;
    Swap best_swap{-1, -1};
    for (std::size_t i = 0; i < l0.size(); ++i)
      for (std::size_t j = 0; j < l1.size(); ++j) {
        if (l0[i] == l1[j]) continue;
        std::swap(l0[i], l1[j]);
        const double g = gap(l0, l1);
        std::swap(l0[i], l1[j]);
        if (g < best) {
          best = g;
          best_swap = {static_cast<int>(i), static_cast<int>(j)};
        }
      }
    if (best_swap.first < 0) break;
    std::swap(l0[best_swap.first], l1[best_swap.second]);
    swaps.push_back(best_swap);
    current = best;
  }
  return swaps;
}

}  // namespace uss
