#include "uss/enumerator.hpp"

#include <algorithm>

namespace uss {

ColumnStats& ColumnStats::operator+=(const ColumnStats& o) {
  states_expanded += o.states_expanded;
  candidates_generated += o.candidates_generated;
  new_sums_admitted += o.new_sums_admitted;
  collisions_pruned += o.collisions_pruned;
  canonical_replacements += o.canonical_replacements;
  return *this;
}

SplitEnumerator::SplitEnumerator(int split_id, std::vector<SumValue> values, AliasPlan plan,
                                 int size_cap, const EnumOptions& options)
    : split_id_(split_id),
      values_(std::move(values)),
      plan_(std::move(plan)),
      size_cap_(size_cap) {
  if (m() > kMaxSplitSize) throw ContractViolation("split exceeds 64 elements");
  if (size_cap_ < 0 || size_cap_ > m()) throw ContractViolation("max_k must be within 0..m");
  aliased_ = aliased_values(values_, plan_);
  for (SumValue v : values_) total_ += v;
  if (options.shuffle_seed) rng_.emplace(*options.shuffle_seed);
}

StateId SplitEnumerator::add_state(const PartialState& s) {
  states_.push_back(s);
  states_.back().split_id = static_cast<std::int8_t>(split_id_);
  return static_cast<StateId>(states_.size() - 1);
}

StateId SplitEnumerator::make_root() { return add_state(PartialState{}); }

bool SplitEnumerator::expandable(StateId id) const {
  const PartialState& s = states_[id];
  return !s.do_not_extend && !s.expanded && s.size() < size_cap_;
}

SplitEnumerator::Outcome SplitEnumerator::admit(SumValue sum, std::uint64_t mask,
                                                ColumnStats& stats, StateId& created) {
  ++stats.candidates_generated;
  const int size = std::popcount(mask);
  const bool keep = size < size_cap_;
  MemoTable::Entry* e = memo_.find(sum);
  if (e == nullptr) {
    PartialState s;
    s.sum = sum;
    s.mask = mask;
    if (keep) created = add_state(s);
    memo_.insert(sum, mask, created);
    ++stats.new_sums_admitted;
    return Outcome::kNew;
  }
  if (mask != e->mask && !plan_.empty() && !toggle_equivalent(mask, e->mask, plan_))
    ambiguous_ = true;
  if (colex_less(mask, e->mask)) {
    if (e->state != kNoState) {
      PartialState& old = states_[e->state];
      // Same-size pending representatives are redundant; a smaller one
      // still carries extensions the replacement cannot reach in time.
      if (!old.expanded && old.size() == size) old.do_not_extend = true;
    }
    PartialState s;
    s.sum = sum;
    s.mask = mask;
    if (keep) created = add_state(s);
    e->mask = mask;
    e->state = created;
    ++stats.canonical_replacements;
    return Outcome::kReplaced;
  }
  ++stats.collisions_pruned;
  if (keep && std::popcount(e->mask) > size) {
    PartialState s;
    s.sum = sum;
    s.mask = mask;
    created = add_state(s);
    ++shadows_;
  }
  return Outcome::kPruned;
}

StateId SplitEnumerator::offer(SumValue sum, std::uint64_t mask, ColumnStats& stats) {
  StateId created = kNoState;
  admit(sum, mask, stats, created);
  return created;
}

void SplitEnumerator::append_element(SumValue value) {
  if (m() >= kMaxSplitSize) throw ContractViolation("split would exceed 64 elements");
  values_.push_back(value);
  aliased_.push_back(value);
  total_ += value;
}

void SplitEnumerator::shuffle(std::vector<StateId>& frontier) {
  if (rng_) std::shuffle(frontier.begin(), frontier.end(), *rng_);
}

EnumerationResult enumerate_split(const std::vector<SumValue>& split, int max_k,
                                  const std::vector<SeedEntry>& seeds, const AliasPlan* plan,
                                  const AdmissionSink& sink, const EnumOptions& options) {
  const int m = static_cast<int>(split.size());
  if (max_k < 0 || max_k > m) throw ContractViolation("max_k must be within 0..m");
  SplitEnumerator en(plan ? plan->split_id : 0, split, plan ? *plan : AliasPlan{}, max_k,
                     options);

  std::vector<StateId> input{en.make_root()};
  ColumnStats seeding;
  for (const auto& [sum, mask] : seeds) {
    if (mask.m != m) throw InputError("seed mask width does not match split");
    if (mask.bits == 0 || en.aliased_sum_of(mask.bits) != sum)
      throw InputError("seed sum " + to_string(sum) + " does not match its mask");
    const StateId id = en.offer(sum, mask.bits, seeding);
    if (id != kNoState) input.push_back(id);
  }

  EnumerationResult result;
  std::vector<StateId> output;
  auto on_admit = [&](const PartialState& s, bool replacement) {
    if (sink) sink(s.sum, SubsetMask{s.mask, m}, replacement);
    return false;
  };
  for (int column = 1; !input.empty(); ++column) {
    ColumnStats stats;
    stats.column = column;
    en.shuffle(input);
    for (StateId id : input) {
      if (!en.expandable(id)) continue;
      en.expand(id, output, stats, on_admit);
    }
    result.columns.push_back(stats);
    result.totals += stats;
    input.swap(output);
    output.clear();
  }
  result.shadows = en.shadows();
  result.ambiguous = en.ambiguous();
  result.memo = std::move(en.memo());
  return result;
}

std::uint64_t sumset_size_from_memo(const MemoTable& memo, SumValue split_total) {
  const std::uint64_t x = memo.size() + 1;
  // Count x in memo + {0} whose complement T - x is also present.
  std::uint64_t both = split_total == 0 ? 1 : 0;
  if (split_total != 0 && memo.contains(split_total)) ++both;
  memo.for_each([&](const MemoTable::Entry& e) {
    const SumValue s = e.sum();
    if (s > split_total) return;
    const SumValue rest = split_total - s;
    if (rest == 0 || memo.contains(rest)) ++both;
  });
  return 2 * x - both;
}

std::uint64_t folded_unique_count(const MemoTable& memo, SumValue split_total) {
  const std::uint64_t sigma = sumset_size_from_memo(memo, split_total);
  const SumValue half = split_total / 2;
  const bool middle =
      split_total % 2 == 0 && (half == 0 || memo.contains(half));
  return (sigma + (middle ? 1 : 0)) / 2 - 1;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

namespace {

void probe_dfs(const std::vector<SumValue>& elements, int start, int depth, int k_cap,
               SumValue sum, std::vector<SumValue>& sums) {
  for (int k = start; k < static_cast<int>(elements.size()); ++k) {
    const SumValue s = sum + elements[k];
    sums.push_back(s);
    if (depth + 1 < k_cap) probe_dfs(elements, k + 1, depth + 1, k_cap, s, sums);
  }
}

}  // namespace

ProbeReport litmus_probe(const std::vector<SumValue>& elements, int k_cap) {
  if (k_cap < 1) throw ContractViolation("k_cap must be >= 1");
  if (elements.size() > static_cast<std::size_t>(kMaxSplitSize))
    throw ContractViolation("probe supports at most 64 elements");
  // Only counts are reported, so sort-and-dedup beats a hash table here:
  // memory access stays sequential as the sum list outgrows cache.
  std::uint64_t bound = 0;
  for (int k = 1; k <= k_cap; ++k) bound += binomial(static_cast<int>(elements.size()), k);
  std::vector<SumValue> sums;
  sums.reserve(static_cast<std::size_t>(bound) + 1);
  sums.push_back(0);  // the empty subset
  probe_dfs(elements, 0, 0, k_cap, 0, sums);
  ProbeReport report;
  report.subsets_enumerated = sums.size();
  std::sort(sums.begin(), sums.end());
  report.unique_sums = static_cast<std::uint64_t>(std::unique(sums.begin(), sums.end()) - sums.begin());
  report.collision_rate =
      1.0 - static_cast<double>(report.unique_sums) / static_cast<double>(report.subsets_enumerated);
  return report;
}

}  // namespace uss
