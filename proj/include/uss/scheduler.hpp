#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "uss/enumerator.hpp"
#include "uss/solver.hpp"

namespace uss {

int compute_lookahead(int n, SumValue total_sum);

inline constexpr int kAutoSplit = -1;

// Both split enumerators, the cycle-indexed deferral queues, and the lemma
// checks. Column mode is the special case look_ahead == 0 (one cycle).
class Search {
 public:
  Search(const Instance& instance, const SolverConfig& config);
  Search(Search&&) noexcept;
  Search& operator=(Search&&) noexcept;
  ~Search();

  // Runs at most max_cycles further cycles; PAUSED when cycles remain.
  Decision run_cycles(std::optional<int> max_cycles = std::nullopt,
                      const std::function<void(const CycleReport&)>& on_cycle = {});

  // Only between cycles. split_choice is 0, 1 or kAutoSplit (smaller half,
  // ties to l0).
  void add_element_online(SumValue value, int split_choice = kAutoSplit);

  // True: expand this cycle. False: deferred to a later cycle's queue.
  bool expand_or_schedule(int split, StateId id);

  void save(std::ostream& out) const;
  void save_file(const std::string& path) const;
  static Search load(std::istream& in, const SolverConfig& runtime = {});
  static Search load_file(const std::string& path, const SolverConfig& runtime = {});

  int look_ahead() const { return look_ahead_; }
  int current_cycle() const { return current_cycle_; }
  bool finished() const;
  const Instance& instance() const { return instance_; }
  const SplitEnumerator& split(int x) const { return *en_[x]; }
  const std::vector<int>& placement(int x) const { return placement_[x]; }
  // Queued (pending) state count for cycles >= current.
  std::size_t queued_states() const;
  const std::vector<CycleReport>& cycles() const { return cycles_; }

 private:
  Search() = default;
  SplitView view(int x) const;
  std::optional<SolutionReport> check_candidate(int x, const PartialState& s) const;
  std::optional<SolutionReport> check_roots() const;
  std::optional<SolutionReport> recheck_all() const;
  std::vector<StateId>& queue(int x, int cycle);
  bool run_one_cycle();
  bool run_parallel_round(std::array<std::vector<StateId>, 2>& input,
                          std::array<std::vector<StateId>, 2>& output, ColumnStats& stats);
  Decision snapshot(Outcome outcome) const;
  void record_column(const ColumnStats& stats);

  Instance instance_;
  SolverConfig config_;
  std::array<std::unique_ptr<SplitEnumerator>, 2> en_;
  std::array<std::vector<int>, 2> placement_;
  std::array<std::vector<std::vector<StateId>>, 2> queues_;
  int current_cycle_ = 0;
  int look_ahead_ = 0;
  bool started_ = false;
  bool roots_checked_ = false;
  bool recheck_pending_ = false;
  bool alias_fallback_ = false;
  bool resumed_ = false;  // loaded from a checkpoint
  std::optional<SolutionReport> solution_;
  std::optional<Outcome> final_outcome_;
  ColumnStats totals_;
  std::vector<ColumnStats> columns_;
  std::vector<CycleReport> cycles_;
};

}  // namespace uss
