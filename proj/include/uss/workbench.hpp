#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "uss/core.hpp"

namespace uss {

// SplitMix64 (Steele, Lea, Flood 2014): state += 0x9E3779B97F4A7C15, then
// z = (z ^ z>>30) * 0xBF58476D1CE4E5B9; z = (z ^ z>>27) * 0x94D049BB133111EB;
// z ^ z>>31. Platform independent, so generated instances are bit-identical.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  // Uniform in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound);
  // Uniform value with exactly `bits` bits (top bit set), 1 <= bits <= 100.
  SumValue exact_bits(int bits);

 private:
  std::uint64_t state_;
};

enum class GenKind { kDissociative, kDense, kWithDuplicates, kWithProgressions };

const char* to_string(GenKind kind);
GenKind parse_gen_kind(const std::string& name);

struct GenSpec {
  GenKind kind = GenKind::kDissociative;
  int n = 16;
  int w = 32;
  std::uint64_t seed = 1;
  int duplicates_per_half = 0;  // WITH_DUPLICATES
  int sequences_per_half = 1;   // WITH_PROGRESSIONS
  int sequence_length = 3;
  SumValue sequence_stride = 0;  // 0 draws a random stride per sequence
  // 0 plants the sum of a random subset as the target.
  SumValue target = 0;
};

// Progressions are embedded as multiples {d, 2d, ..., Ld} of the stride d,
// filling the last slots of each alternating half.
Instance generate(const GenSpec& spec);

std::vector<SumValue> oracle_sumset(const std::vector<SumValue>& elements);
bool oracle_decide(const std::vector<SumValue>& elements, SumValue target);

struct ClearedInstance {
  Instance instance;
  SumValue error_bound = 0;  // n * (2^b - 1)
};
ClearedInstance clear_bits(const Instance& instance, int b);

// Text format: line 1 "n t", then one base-10 element per line.
Instance read_instance(std::istream& in);
Instance read_instance_file(const std::string& path);
void write_instance(std::ostream& out, const Instance& instance);

// Alternating halves: index i goes to half i % 2.
std::vector<SumValue> alternating_half(const std::vector<SumValue>& elements, int half);

}  // namespace uss
