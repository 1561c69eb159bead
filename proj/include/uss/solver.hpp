#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "uss/aliasing.hpp"
#include "uss/core.hpp"
#include "uss/enumerator.hpp"
#include "uss/memo.hpp"

namespace uss {

enum class SplitPolicy { kAlternating, kBalancedByProbe };

const char* to_string(SplitPolicy policy);
SplitPolicy parse_split_policy(const std::string& name);

struct SplitPair {
  std::vector<SumValue> l0, l1;
  std::vector<int> placement0, placement1;  // split index -> original index
  SumValue sum_l0 = 0;
  SumValue sum_l1 = 0;
};

// Throws ContractViolation for n < 2.
SplitPair split_instance(const Instance& instance, SplitPolicy policy);

struct SolutionReport {
  int lemma_id = 0;
  std::vector<int> original_indices;
  SumValue verified_sum = 0;
  int cycle_found = 0;
  int column_found = 0;
};

struct CycleReport {
  int cycle = 0;
  std::uint64_t states_expanded = 0;
  std::uint64_t new_sums = 0;
  std::uint64_t deferrals = 0;
  std::uint64_t max_column_cost = 0;
  double wall_time = 0.0;  // seconds
};

enum class Outcome { kFound, kExhausted, kPaused };
const char* to_string(Outcome outcome);

struct Decision {
  Outcome outcome = Outcome::kExhausted;
  std::optional<SolutionReport> solution;
  ColumnStats totals;
  std::vector<ColumnStats> columns;  // one per (cycle, column), both splits
  std::vector<CycleReport> cycles;
  std::uint64_t u0 = 0;
  std::uint64_t u1 = 0;
  // An aliased search hit a collision it could not resolve and the
  // exhaustion was confirmed by an exact search.
  bool alias_fallback = false;
};

struct SolverConfig {
  int alias_count = 0;  // alias pairs per half, 0..2
  bool anytime = false;
  std::optional<int> look_ahead;  // overrides the computed value when anytime
  SplitPolicy policy = SplitPolicy::kAlternating;
  bool parallel = false;  // two workers, column mode only
  bool enumerate_only = false;  // skip the lemma checks; always ends EXHAUSTED
  std::function<void(const ColumnStats&)> stats_sink;
};

// Read-only view of one split used by the lemma checks.
struct SplitView {
  const std::vector<SumValue>* values = nullptr;
  const std::vector<int>* placement = nullptr;
  const AliasPlan* plan = nullptr;
  const MemoTable* memo = nullptr;
  SumValue total = 0;
  int m() const { return static_cast<int>(values->size()); }
};

// Tests a freshly admitted candidate of `own` against the target (L1, L3,
// L2/L5, L4 in that order). Hits are re-verified on true values.
std::optional<SolutionReport> check(const PartialState& candidate, SumValue target,
                                    const SplitView& own, const SplitView& other);

bool verify_solution(const std::vector<int>& indices, const Instance& instance, SumValue target);

Decision solve(const Instance& instance, const SolverConfig& config = {});

}  // namespace uss
