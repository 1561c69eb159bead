#include "uss/workbench.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "uss/enumerator.hpp"

namespace uss {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x;
  do x = next();
  while (x >= limit);
  return x % bound;
}

SumValue SplitMix64::exact_bits(int bits) {
  if (bits < 1 || bits > kMaxElementBits) throw ContractViolation("bit width must be 1..100");
  const SumValue hi = next();
  const SumValue lo = next();
  SumValue v = (hi << 64) | lo;
  const SumValue top = SumValue{1} << (bits - 1);
  return (v & (top - 1)) | top;
}

const char* to_string(GenKind kind) {
  switch (kind) {
    case GenKind::kDissociative: return "DISSOCIATIVE";
    case GenKind::kDense: return "DENSE";
    case GenKind::kWithDuplicates: return "WITH_DUPLICATES";
    case GenKind::kWithProgressions: return "WITH_PROGRESSIONS";
  }
  return "?";
}

GenKind parse_gen_kind(const std::string& name) {
  std::string up = name;
  std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
  std::replace(up.begin(), up.end(), '-', '_');
  for (GenKind k : {GenKind::kDissociative, GenKind::kDense, GenKind::kWithDuplicates,
                    GenKind::kWithProgressions})
    if (up == to_string(k)) return k;
  throw InputError("unknown instance kind: " + name);
}

std::vector<SumValue> alternating_half(const std::vector<SumValue>& elements, int half) {
  std::vector<SumValue> out;
  for (std::size_t i = half; i < elements.size(); i += 2) out.push_back(elements[i]);
  return out;
}

namespace {

struct SumHash {
  std::size_t operator()(SumValue s) const {
    return static_cast<std::size_t>(s ^ (s >> 64)) * 0x9E3779B97F4A7C15ull;
  }
};

constexpr int kMaxDrawAttempts = 20000;

// Grows one half element by element, keeping all subsets of size <= 4
// collision-free.
class DissociativeHalf {
 public:
  DissociativeHalf() { small_[0].push_back(0); seen_.insert(0); }

  bool try_add(SumValue v) {
    std::vector<SumValue> fresh;
    for (int k = 0; k < 4; ++k)
      for (SumValue s : small_[k]) {
        const SumValue t = s + v;
        if (seen_.count(t)) return false;
        fresh.push_back(t);
      }
    // fresh sums are pairwise distinct because the old ones were.
    std::size_t pos = 0;
    std::vector<SumValue> grown[4];
    for (int k = 0; k < 4; ++k) {
      grown[k] = std::vector<SumValue>(fresh.begin() + pos, fresh.begin() + pos + small_[k].size());
      pos += small_[k].size();
    }
    for (int k = 3; k >= 0; --k) {
      for (SumValue t : grown[k]) seen_.insert(t);
      if (k + 1 < 4) small_[k + 1].insert(small_[k + 1].end(), grown[k].begin(), grown[k].end());
    }
    values_.push_back(v);
    return true;
  }
  const std::vector<SumValue>& values() const { return values_; }

 private:
  std::vector<SumValue> small_[4];  // sums of subsets of size 0..3
  std::unordered_set<SumValue, SumHash> seen_;
  std::vector<SumValue> values_;
};

std::vector<SumValue> interleave(const std::vector<SumValue>& h0, const std::vector<SumValue>& h1) {
  std::vector<SumValue> out;
  for (std::size_t i = 0; i < h0.size() || i < h1.size(); ++i) {
    if (i < h0.size()) out.push_back(h0[i]);
    if (i < h1.size()) out.push_back(h1[i]);
  }
  return out;
}

std::vector<SumValue> draw_distinct(SplitMix64& rng, int n, int w) {
  if (w < 64 && static_cast<std::uint64_t>(n) > (std::uint64_t{1} << (w - 1)))
    throw InputError("cannot draw " + std::to_string(n) + " distinct " + std::to_string(w) +
                     "-bit values");
  std::vector<SumValue> out;
  std::unordered_set<SumValue, SumHash> used;
  while (static_cast<int>(out.size()) < n) {
    const SumValue v = rng.exact_bits(w);
    if (used.insert(v).second) out.push_back(v);
  }
  return out;
}

std::vector<SumValue> draw_dissociative(SplitMix64& rng, int n, int w) {
  DissociativeHalf halves[2];
  std::unordered_set<SumValue, SumHash> used;
  for (int i = 0; i < n; ++i) {
    DissociativeHalf& h = halves[i % 2];
    int attempts = 0;
    for (;;) {
      if (++attempts > kMaxDrawAttempts)
        throw InputError("no dissociative instance with n=" + std::to_string(n) +
                         " and w=" + std::to_string(w) + " found");
      const SumValue v = rng.exact_bits(w);
      if (used.count(v)) continue;
      if (h.try_add(v)) {
        used.insert(v);
        break;
      }
    }
  }
  return interleave(halves[0].values(), halves[1].values());
}

}  // namespace

Instance generate(const GenSpec& spec) {
  if (spec.n < 1 || spec.n > kMaxElements) throw InputError("n must be within 1..128");
  if (spec.w < 2 || spec.w > kMaxElementBits) throw InputError("w must be within 2..100");
  SplitMix64 rng(spec.seed);
  Instance inst;
  switch (spec.kind) {
    case GenKind::kDense:
      inst.elements = draw_distinct(rng, spec.n, spec.w);
      break;
    case GenKind::kDissociative:
      inst.elements = draw_dissociative(rng, spec.n, spec.w);
      break;
    case GenKind::kWithDuplicates: {
      inst.elements = draw_dissociative(rng, spec.n, spec.w);
      std::vector<SumValue> h[2] = {alternating_half(inst.elements, 0),
                                    alternating_half(inst.elements, 1)};
      for (auto& half : h) {
        const int m = static_cast<int>(half.size());
        if (2 * spec.duplicates_per_half > m)
          throw InputError("too many duplicates for a half of " + std::to_string(m));
        for (int j = 0; j < spec.duplicates_per_half; ++j) half[m - 1 - j] = half[j];
      }
      inst.elements = interleave(h[0], h[1]);
      break;
    }
    case GenKind::kWithProgressions: {
      inst.elements = draw_dissociative(rng, spec.n, spec.w);
      const int len = spec.sequence_length;
      if (len < 1 || len > 8) throw InputError("sequence length must be within 1..8");
      if (spec.w < 5) throw InputError("progressions need w >= 5");
      std::vector<SumValue> h[2] = {alternating_half(inst.elements, 0),
                                    alternating_half(inst.elements, 1)};
      for (auto& half : h) {
        const int m = static_cast<int>(half.size());
        if (spec.sequences_per_half * len > m)
          throw InputError("progressions do not fit into a half of " + std::to_string(m));
        for (int s = 0; s < spec.sequences_per_half; ++s) {
          // Drawn unconditionally so lengthening a sequence keeps its stride.
          const SumValue drawn = rng.exact_bits(spec.w - 3);
          const SumValue d = spec.sequence_stride != 0 ? spec.sequence_stride : drawn;
          for (int j = 0; j < len; ++j) half[m - 1 - s * len - j] = d * static_cast<unsigned>(j + 1);
        }
      }
      inst.elements = interleave(h[0], h[1]);
      break;
    }
  }
  if (spec.target != 0) {
    inst.target = spec.target;
  } else {
    for (SumValue v : inst.elements)
      if (rng.next() & 1u) inst.target += v;
    if (inst.target == 0) inst.target = inst.elements[0];
  }
  inst.validate();
  return inst;
}

std::vector<SumValue> oracle_sumset(const std::vector<SumValue>& elements) {
  if (elements.size() > 28) throw ContractViolation("oracle_sumset supports at most 28 elements");
  std::vector<SumValue> sums{0}, shifted, merged;
  for (SumValue x : elements) {
    shifted.resize(sums.size());
    for (std::size_t i = 0; i < sums.size(); ++i) shifted[i] = sums[i] + x;
    merged.clear();
    std::set_union(sums.begin(), sums.end(), shifted.begin(), shifted.end(),
                   std::back_inserter(merged));
    sums.swap(merged);
  }
  return sums;
}

namespace {

constexpr SumValue kDenseDpLimit = SumValue{1} << 26;
constexpr std::size_t kSparseDpLimit = std::size_t{1} << 27;

}  // namespace

bool oracle_decide(const std::vector<SumValue>& elements, SumValue target) {
  if (target == 0) return true;
  if (target <= kDenseDpLimit) {
    const auto t = static_cast<std::size_t>(target);
    const std::size_t words = t / 64 + 1;
    std::vector<std::uint64_t> reach(words, 0);
    reach[0] = 1;
    for (SumValue xv : elements) {
      if (xv > target) continue;
      // reach |= reach << x, walking downward so each word reads old bits.
      const auto x = static_cast<std::size_t>(xv);
      const std::size_t word_shift = x / 64;
      const unsigned bit_shift = static_cast<unsigned>(x % 64);
      for (std::size_t i = words; i-- > word_shift;) {
        const std::size_t src = i - word_shift;
        std::uint64_t v = reach[src] << bit_shift;
        if (bit_shift != 0 && src > 0) v |= reach[src - 1] >> (64 - bit_shift);
        reach[i] |= v;
      }
      if ((reach[t / 64] >> (t % 64)) & 1u) return true;
    }
    return (reach[t / 64] >> (t % 64)) & 1u;
  }
  // Sparse DP over reachable sums <= target.
  std::vector<SumValue> sums{0}, shifted, merged;
  for (SumValue x : elements) {
    shifted.clear();
    for (SumValue s : sums)
      if (s + x <= target) shifted.push_back(s + x);
    merged.clear();
    std::set_union(sums.begin(), sums.end(), shifted.begin(), shifted.end(),
                   std::back_inserter(merged));
    sums.swap(merged);
    if (sums.back() == target) return true;
    if (sums.size() > kSparseDpLimit) throw ContractViolation("oracle_decide: instance too large");
  }
  return std::binary_search(sums.begin(), sums.end(), target);
}

ClearedInstance clear_bits(const Instance& instance, int b) {
  if (b < 0) throw ContractViolation("bit count must be >= 0");
  SumValue max_element = 0;
  for (SumValue v : instance.elements) max_element = std::max(max_element, v);
  if (b > 0 && b >= bit_length(max_element))
    throw ContractViolation("cannot clear more bits than the largest element has");
  ClearedInstance out;
  out.instance.target = instance.target >> b;
  for (std::size_t i = 0; i < instance.elements.size(); ++i) {
    const SumValue v = instance.elements[i] >> b;
    if (v == 0) throw InputError("element " + std::to_string(i) + " becomes zero after clearing");
    out.instance.elements.push_back(v);
  }
  out.error_bound = static_cast<SumValue>(instance.elements.size()) * ((SumValue{1} << b) - 1);
  return out;
}

Instance read_instance(std::istream& in) {
  Instance inst;
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& what) {
    throw InputError("line " + std::to_string(line_no) + ": " + what);
  };
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      const auto last = line.find_last_not_of(" \t\r");
      line = line.substr(first, last - first + 1);
      return true;
    }
    return false;
  };
  if (!next_line()) throw InputError("line 1: missing header 'n t'");
  std::istringstream header(line);
  std::string n_text, t_text, extra;
  if (!(header >> n_text >> t_text) || (header >> extra)) fail("expected 'n t'");
  int n = 0;
  try {
    const SumValue nv = parse_sum(n_text);
    if (nv > static_cast<SumValue>(kMaxElements)) fail("n exceeds 128");
    n = static_cast<int>(nv);
    inst.target = parse_sum(t_text);
  } catch (const InputError& e) {
    if (std::string(e.what()).rfind("line ", 0) == 0) throw;
    fail(e.what());
  }
  for (int i = 0; i < n; ++i) {
    if (!next_line()) fail("expected " + std::to_string(n) + " elements, found " + std::to_string(i));
    try {
      const SumValue v = parse_sum(line);
      if (v == 0) fail("element must be positive");
      inst.elements.push_back(v);
    } catch (const InputError& e) {
      if (std::string(e.what()).rfind("line ", 0) == 0) throw;
      fail(e.what());
    }
  }
  if (next_line()) fail("unexpected content after " + std::to_string(n) + " elements");
  try {
    inst.validate();
  } catch (const InputError& e) {
    throw InputError(std::string("line 1: ") + e.what());
  }
  return inst;
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open instance file: " + path);
  return read_instance(in);
}

void write_instance(std::ostream& out, const Instance& instance) {
  out << instance.n() << ' ' << to_string(instance.target) << '\n';
  for (SumValue v : instance.elements) out << to_string(v) << '\n';
}

}  // namespace uss
