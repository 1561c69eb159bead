#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace uss {

using SumValue = unsigned __int128;

inline constexpr int kMaxSplitSize = 64;
inline constexpr int kMaxElements = 2 * kMaxSplitSize;
inline constexpr int kMaxElementBits = 100;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller broke a documented precondition.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// Malformed or out-of-range input data.
class InputError : public Error {
 public:
  using Error::Error;
};

std::string to_string(SumValue v);
SumValue parse_sum(const std::string& text);
int bit_length(SumValue v);

struct Instance {
  std::vector<SumValue> elements;
  SumValue target = 0;

  int n() const { return static_cast<int>(elements.size()); }
  SumValue total() const;
  // Throws InputError when an invariant does not hold.
  void validate() const;
};

// Split-local inclusion set. Bit i stands for split index i.
struct SubsetMask {
  std::uint64_t bits = 0;
  int m = 0;

  static SubsetMask of(std::initializer_list<int> indices, int m);
  int size() const;
  bool contains(int i) const { return (bits >> i) & 1u; }
  std::vector<int> indices() const;
  friend bool operator==(const SubsetMask&, const SubsetMask&) = default;
};

inline std::uint64_t full_bits(int m) {
  return m >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << m) - 1);
}

// Colex order: the set whose largest differing index is absent comes first.
// For a single word this is plain numeric comparison.
inline bool colex_less(std::uint64_t a, std::uint64_t b) { return a < b; }

bool canonical_less(const SubsetMask& a, const SubsetMask& b);
SubsetMask mask_complement(const SubsetMask& a);
SumValue true_sum(const SubsetMask& mask, const std::vector<SumValue>& split);
SumValue sum_of_bits(std::uint64_t bits, const std::vector<SumValue>& split);
// placement[i] is the original instance index of split-local index i.
std::vector<int> combine(const SubsetMask& mask0, const SubsetMask& mask1,
                         const std::vector<int>& placement0,
                         const std::vector<int>& placement1);

}  // namespace uss
