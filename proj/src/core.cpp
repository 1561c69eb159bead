#include "uss/core.hpp"

#include <algorithm>
#include <bit>

namespace uss {

std::string to_string(SumValue v) {
  if (v == 0) return "0";
  std::string out;
  while (v != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

SumValue parse_sum(const std::string& text) {
  if (text.empty()) throw InputError("empty number");
  SumValue v = 0;
  const SumValue limit = ~SumValue{0} / 10;
  for (char c : text) {
    if (c < '0' || c > '9') throw InputError("not a base-10 integer: '" + text + "'");
    if (v > limit) throw InputError("integer too large: " + text);
    v = v * 10 + static_cast<unsigned>(c - '0');
  }
  return v;
}

int bit_length(SumValue v) {
  const auto hi = static_cast<std::uint64_t>(v >> 64);
  if (hi != 0) return 128 - std::countl_zero(hi);
  return 64 - std::countl_zero(static_cast<std::uint64_t>(v));
}

SumValue Instance::total() const {
  SumValue s = 0;
  for (SumValue e : elements) s += e;
  return s;
}

void Instance::validate() const {
  if (elements.empty()) throw InputError("instance has no elements");
  if (n() > kMaxElements)
    throw InputError("instance has " + std::to_string(n()) + " elements, limit is " +
                     std::to_string(kMaxElements));
  for (int i = 0; i < n(); ++i) {
    if (elements[i] == 0) throw InputError("element " + std::to_string(i) + " is zero");
    if (bit_length(elements[i]) > kMaxElementBits)
      throw InputError("element " + std::to_string(i) + " exceeds 100 bits");
  }
  if (target == 0) throw InputError("target must be >= 1");
  if (target > total()) throw InputError("target exceeds the sum of all elements");
}

SubsetMask SubsetMask::of(std::initializer_list<int> indices, int m) {
  SubsetMask out{0, m};
  for (int i : indices) {
    if (i < 0 || i >= m) throw ContractViolation("mask index out of range");
    out.bits |= std::uint64_t{1} << i;
  }
  return out;
}

int SubsetMask::size() const { return std::popcount(bits); }

std::vector<int> SubsetMask::indices() const {
  std::vector<int> out;
  for (std::uint64_t b = bits; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
  return out;
}

bool canonical_less(const SubsetMask& a, const SubsetMask& b) {
  if (a.m != b.m) throw ContractViolation("canonical_less: masks over different splits");
  return colex_less(a.bits, b.bits);
}

SubsetMask mask_complement(const SubsetMask& a) { return {~a.bits & full_bits(a.m), a.m}; }

SumValue sum_of_bits(std::uint64_t bits, const std::vector<SumValue>& split) {
  SumValue s = 0;
  for (; bits != 0; bits &= bits - 1) s += split[std::countr_zero(bits)];
  return s;
}

SumValue true_sum(const SubsetMask& mask, const std::vector<SumValue>& split) {
  if (mask.m != static_cast<int>(split.size()))
    throw ContractViolation("true_sum: mask width does not match split");
  return sum_of_bits(mask.bits, split);
}

std::vector<int> combine(const SubsetMask& mask0, const SubsetMask& mask1,
                         const std::vector<int>& placement0,
                         const std::vector<int>& placement1) {
  std::vector<int> out;
  for (int i : mask0.indices()) out.push_back(placement0.at(i));
  for (int i : mask1.indices()) out.push_back(placement1.at(i));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace uss
