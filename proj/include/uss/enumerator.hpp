#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "uss/aliasing.hpp"
#include "uss/core.hpp"
#include "uss/memo.hpp"

namespace uss {

struct PartialState {
  SumValue sum = 0;  // aliased sum when a plan is active
  std::uint64_t mask = 0;
  std::int32_t last_deferral_index = -1;
  std::int8_t split_id = 0;
  // Online branches only extend with indices >= this.
  std::int8_t min_extend_index = 0;
  bool do_not_extend = false;
  bool expanded = false;

  int size() const { return std::popcount(mask); }
};

struct ColumnStats {
  int cycle = 0;
  int column = 0;
  std::uint64_t states_expanded = 0;
  std::uint64_t candidates_generated = 0;
  std::uint64_t new_sums_admitted = 0;
  std::uint64_t collisions_pruned = 0;
  std::uint64_t canonical_replacements = 0;

  ColumnStats& operator+=(const ColumnStats& o);
  bool empty() const { return states_expanded == 0 && candidates_generated == 0; }
};

struct EnumOptions {
  // Shuffle candidate and frontier order; used to test order independence.
  std::optional<std::uint64_t> shuffle_seed;
};

// Enumeration state of one split: values, memo, and the arena of admitted
// states that may still be expanded.
class SplitEnumerator {
 public:
  SplitEnumerator(int split_id, std::vector<SumValue> values, AliasPlan plan, int size_cap,
                  const EnumOptions& options = {});

  int split_id() const { return split_id_; }
  int m() const { return static_cast<int>(values_.size()); }
  int size_cap() const { return size_cap_; }
  void set_size_cap(int cap) { size_cap_ = cap; }
  const std::vector<SumValue>& values() const { return values_; }
  const std::vector<SumValue>& aliased() const { return aliased_; }
  const AliasPlan& plan() const { return plan_; }
  SumValue total() const { return total_; }
  bool ambiguous() const { return ambiguous_; }
  void mark_ambiguous() { ambiguous_ = true; }
  std::uint64_t shadows() const { return shadows_; }

  MemoTable& memo() { return memo_; }
  const MemoTable& memo() const { return memo_; }
  PartialState& state(StateId id) { return states_[id]; }
  const PartialState& state(StateId id) const { return states_[id]; }
  std::size_t state_count() const { return states_.size(); }

  StateId add_state(const PartialState& s);
  StateId make_root();
  bool expandable(StateId id) const;
  SumValue aliased_sum_of(std::uint64_t mask) const { return sum_of_bits(mask, aliased_); }

  // Offers (sum, mask) as if it had been generated; used for seeding.
  // Returns the new state (kNoState when pruned or at the size cap).
  StateId offer(SumValue sum, std::uint64_t mask, ColumnStats& stats);

  // Expands one state. on_admit(const PartialState&, bool replacement) is
  // called for each admitted candidate and returns true to stop early.
  // Returns true if stopped.
  template <class OnAdmit>
  bool expand(StateId id, std::vector<StateId>& out, ColumnStats& stats, OnAdmit&& on_admit);

  void append_element(SumValue value);
  void shuffle(std::vector<StateId>& frontier);

 private:
  enum class Outcome { kNew, kReplaced, kPruned };
  Outcome admit(SumValue sum, std::uint64_t mask, ColumnStats& stats, StateId& created);

  int split_id_;
  std::vector<SumValue> values_;
  std::vector<SumValue> aliased_;
  AliasPlan plan_;
  int size_cap_;
  SumValue total_ = 0;
  MemoTable memo_;
  std::vector<PartialState> states_;
  bool ambiguous_ = false;
  std::uint64_t shadows_ = 0;
  std::optional<std::mt19937_64> rng_;
};

template <class OnAdmit>
bool SplitEnumerator::expand(StateId id, std::vector<StateId>& out, ColumnStats& stats,
                             OnAdmit&& on_admit) {
  states_[id].expanded = true;
  const PartialState s = states_[id];
  ++stats.states_expanded;

  int order[kMaxSplitSize];
  SumValue cand[kMaxSplitSize];
  int count = 0;
  for (int k = s.min_extend_index; k < m(); ++k) {
    if ((s.mask >> k) & 1u) continue;
    order[count] = k;
    cand[count] = s.sum + aliased_[k];
    memo_.prefetch(cand[count]);
    ++count;
  }
  if (rng_) {
    for (int i = count - 1; i > 0; --i) {
      const int j = static_cast<int>((*rng_)() % static_cast<std::uint64_t>(i + 1));
      std::swap(order[i], order[j]);
      std::swap(cand[i], cand[j]);
    }
  }
  for (int i = 0; i < count; ++i) {
    const std::uint64_t mask = s.mask | (std::uint64_t{1} << order[i]);
    StateId created = kNoState;
    const Outcome outcome = admit(cand[i], mask, stats, created);
    if (created != kNoState) {
      states_[created].last_deferral_index = s.last_deferral_index;
      out.push_back(created);
    }
    if (outcome == Outcome::kPruned) continue;
    PartialState admitted;
    admitted.sum = cand[i];
    admitted.mask = mask;
    admitted.split_id = static_cast<std::int8_t>(split_id_);
    if (on_admit(admitted, outcome == Outcome::kReplaced)) return true;
  }
  return false;
}

struct EnumerationResult {
  MemoTable memo;
  std::vector<ColumnStats> columns;
  ColumnStats totals;
  std::uint64_t shadows = 0;
  bool ambiguous = false;
};

using AdmissionSink = std::function<void(SumValue sum, const SubsetMask& mask, bool replacement)>;
using SeedEntry = std::pair<SumValue, SubsetMask>;

EnumerationResult enumerate_split(const std::vector<SumValue>& split, int max_k,
                                  const std::vector<SeedEntry>& seeds = {},
                                  const AliasPlan* plan = nullptr,
                                  const AdmissionSink& sink = {},
                                  const EnumOptions& options = {});

// Number of distinct subset sums of the whole split (including 0), recovered
// from a memo that covers subsets up to floor(m/2) via complements.
std::uint64_t sumset_size_from_memo(const MemoTable& memo, SumValue split_total);
// Sums below or at the midpoint, excluding 0: |Sigma| folded by complement.
std::uint64_t folded_unique_count(const MemoTable& memo, SumValue split_total);

struct ProbeReport {
  std::uint64_t subsets_enumerated = 0;
  std::uint64_t unique_sums = 0;
  double collision_rate = 0.0;
  // Filled by analysis::analyze; zero otherwise.
  double density = 0.0;
  std::uint64_t doubling_num = 0;
  std::uint64_t doubling_den = 1;
  std::uint64_t additive_energy = 0;
  std::uint64_t duplicate_count = 0;
};

ProbeReport litmus_probe(const std::vector<SumValue>& elements, int k_cap = 4);

std::uint64_t binomial(int n, int k);

}  // namespace uss
