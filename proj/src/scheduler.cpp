#include "uss/scheduler.hpp"

#include <algorithm>
#include <chrono>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <thread>

namespace uss {

int compute_lookahead(int n, SumValue total_sum) {
  if (n < 1) throw ContractViolation("look-ahead needs n >= 1");
  if (n < 128 && (SumValue{1} << n) > total_sum) return 0;
  const int extra = n / 32 > 1 ? n / 32 + 1 : 0;
  return n / 16 + extra;
}

namespace {

// Small or duplicate-heavy halves get as many pairs as they can support.
AliasPlan lenient_plan(const std::vector<SumValue>& half, int count, int split_id) {
  for (int c = count; c > 0; --c) {
    try {
      return plan_alias(half, c, split_id);
    } catch (const ContractViolation&) {
    }
  }
  return plan_alias(half, 0, split_id);
}

}  // namespace

Search::Search(Search&&) noexcept = default;
Search& Search::operator=(Search&&) noexcept = default;
Search::~Search() = default;

Search::Search(const Instance& instance, const SolverConfig& config)
    : instance_(instance), config_(config) {
  instance_.validate();
  if (config_.parallel && config_.anytime)
    throw ContractViolation("two-worker mode supports column mode only");
  const SplitPair p = split_instance(instance_, config_.policy);
  placement_[0] = p.placement0;
  placement_[1] = p.placement1;
  const std::vector<SumValue>* halves[2] = {&p.l0, &p.l1};
  for (int x = 0; x < 2; ++x) {
    const auto& half = *halves[x];
    const int m = static_cast<int>(half.size());
    en_[x] = std::make_unique<SplitEnumerator>(x, half, lenient_plan(half, config_.alias_count, x),
                                               m / 2);
    queue(x, 0).push_back(en_[x]->make_root());
  }
  if (config_.anytime)
    look_ahead_ = config_.look_ahead ? *config_.look_ahead
                                     : compute_lookahead(instance_.n(), instance_.total());
  if (look_ahead_ < 0) throw ContractViolation("look-ahead must be >= 0");
}

std::vector<StateId>& Search::queue(int x, int cycle) {
  auto& q = queues_[x];
  if (static_cast<int>(q.size()) <= cycle) q.resize(cycle + 1);
  return q[cycle];
}

std::size_t Search::queued_states() const {
  std::size_t total = 0;
  for (const auto& q : queues_)
    for (std::size_t c = current_cycle_; c < q.size(); ++c) total += q[c].size();
  return total;
}

bool Search::finished() const {
  return final_outcome_.has_value();
}

SplitView Search::view(int x) const {
  const SplitEnumerator& en = *en_[x];
  return SplitView{&en.values(), &placement_[x], &en.plan(), &en.memo(), en.total()};
}

std::optional<SolutionReport> Search::check_candidate(int x, const PartialState& s) const {
  if (config_.enumerate_only) return std::nullopt;
  return check(s, instance_.target, view(x), view(1 - x));
}

std::optional<SolutionReport> Search::check_roots() const {
  for (int x = 0; x < 2; ++x)
    if (auto r = check_candidate(x, PartialState{})) return r;
  return std::nullopt;
}

std::optional<SolutionReport> Search::recheck_all() const {
  if (auto r = check_roots()) return r;
  for (int x = 0; x < 2; ++x)
    for (const MemoTable::Entry& e : en_[x]->memo().sorted_entries()) {
      PartialState s;
      s.sum = e.sum();
      s.mask = e.mask;
      if (auto r = check_candidate(x, s)) return r;
    }
  return std::nullopt;
}

bool Search::expand_or_schedule(int x, StateId id) {
  if (look_ahead_ == 0) return true;
  SplitEnumerator& en = *en_[x];
  PartialState& s = en.state(id);
  int k = s.last_deferral_index + 1;
  for (int step = 1; step <= look_ahead_ && k < en.m(); ++step, ++k) {
    if ((s.mask >> k) & 1u) continue;
    if (en.memo().contains(s.sum + en.aliased()[k])) {
      s.last_deferral_index = k;
      queue(x, current_cycle_ + step).push_back(id);
      return false;
    }
  }
  return true;
}

void Search::record_column(const ColumnStats& stats) {
  columns_.push_back(stats);
  totals_ += stats;
  if (config_.stats_sink) config_.stats_sink(stats);
}

bool Search::run_parallel_round(std::array<std::vector<StateId>, 2>& input,
                                std::array<std::vector<StateId>, 2>& output, ColumnStats& stats) {
  std::array<ColumnStats, 2> local;
  std::array<std::vector<PartialState>, 2> admitted;
  auto expand_split = [&](int x) {
    SplitEnumerator& en = *en_[x];
    for (StateId id : input[x]) {
      if (!en.expandable(id)) continue;
      en.expand(id, output[x], local[x], [&](const PartialState& s, bool) {
        admitted[x].push_back(s);
        return false;
      });
    }
  };
  {
    std::thread worker(expand_split, 1);
    expand_split(0);
    worker.join();
  }
  std::array<std::optional<SolutionReport>, 2> hits;
  auto check_split = [&](int x) {
    for (const PartialState& s : admitted[x])
      if ((hits[x] = check_candidate(x, s))) return;
  };
  {
    std::thread worker(check_split, 1);
    check_split(0);
    worker.join();
  }
  stats += local[0];
  stats += local[1];
  for (auto& hit : hits)
    if (hit) {
      solution_ = hit;
      return true;
    }
  return false;
}

bool Search::run_one_cycle() {
  const auto start = std::chrono::steady_clock::now();
  CycleReport report;
  report.cycle = current_cycle_;
  std::array<std::vector<StateId>, 2> input, output;
  for (int x = 0; x < 2; ++x) input[x] = std::move(queue(x, current_cycle_));

  bool found = false;
  for (int round = 1; !found && (!input[0].empty() || !input[1].empty()); ++round) {
    ColumnStats stats;
    stats.cycle = current_cycle_;
    stats.column = round;
    if (config_.parallel) {
      found = run_parallel_round(input, output, stats);
    } else {
      for (int x = 0; x < 2 && !found; ++x) {
        SplitEnumerator& en = *en_[x];
        auto on_admit = [&](const PartialState& s, bool) {
          if (auto r = check_candidate(x, s)) {
            solution_ = r;
            return true;
          }
          return false;
        };
        for (StateId id : input[x]) {
          if (!en.expandable(id)) continue;
          if (!expand_or_schedule(x, id)) {
            ++report.deferrals;
            continue;
          }
          if (en.expand(id, output[x], stats, on_admit)) {
            found = true;
            break;
          }
        }
      }
    }
    if (found) {
      solution_->cycle_found = current_cycle_;
      solution_->column_found = round;
    }
    report.states_expanded += stats.states_expanded;
    report.new_sums += stats.new_sums_admitted;
    report.max_column_cost = std::max(report.max_column_cost, stats.states_expanded);
    record_column(stats);
    for (int x = 0; x < 2; ++x) {
      input[x].swap(output[x]);
      output[x].clear();
    }
  }
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  cycles_.push_back(report);
  ++current_cycle_;
  return found;
}

Decision Search::snapshot(Outcome outcome) const {
  Decision d;
  d.outcome = outcome;
  d.solution = solution_;
  d.totals = totals_;
  d.columns = columns_;
  d.cycles = cycles_;
  d.u0 = en_[0]->memo().size();
  d.u1 = en_[1]->memo().size();
  d.alias_fallback = alias_fallback_;
  return d;
}

Decision Search::run_cycles(std::optional<int> max_cycles,
                            const std::function<void(const CycleReport&)>& on_cycle) {
  if (final_outcome_ == Outcome::kFound) return snapshot(Outcome::kFound);
  started_ = true;
  auto found_at = [&](std::optional<SolutionReport> r) {
    r->cycle_found = current_cycle_;
    r->column_found = 0;
    solution_ = r;
    final_outcome_ = Outcome::kFound;
    return snapshot(Outcome::kFound);
  };
  if (!roots_checked_) {
    roots_checked_ = true;
    if (auto r = check_roots()) return found_at(r);
  }
  if (recheck_pending_) {
    recheck_pending_ = false;
    if (auto r = recheck_all()) return found_at(r);
  }
  int ran = 0;
  while (queued_states() > 0) {
    if (max_cycles && ran >= *max_cycles) return snapshot(Outcome::kPaused);
    const bool found = run_one_cycle();
    ++ran;
    if (on_cycle) on_cycle(cycles_.back());
    if (found) {
      final_outcome_ = Outcome::kFound;
      return snapshot(Outcome::kFound);
    }
  }
  if (!alias_fallback_ && (en_[0]->ambiguous() || en_[1]->ambiguous())) {
    alias_fallback_ = true;
    SolverConfig exact = config_;
    exact.alias_count = 0;
    exact.stats_sink = nullptr;
    Search inner(instance_, exact);
    const Decision d = inner.run_cycles();
    if (d.outcome == Outcome::kFound) {
      solution_ = d.solution;
      final_outcome_ = Outcome::kFound;
      return snapshot(Outcome::kFound);
    }
  }
  final_outcome_ = Outcome::kExhausted;
  return snapshot(Outcome::kExhausted);
}

void Search::add_element_online(SumValue value, int split_choice) {
  if (value == 0) throw ContractViolation("online elements must be positive");
  if (final_outcome_ == Outcome::kFound) throw ContractViolation("search already found a solution");
  int x = split_choice;
  if (x == kAutoSplit) x = en_[0]->m() <= en_[1]->m() ? 0 : 1;
  if (x != 0 && x != 1) throw ContractViolation("split choice must be 0, 1 or AUTO");
  if (bit_length(value) > kMaxElementBits) throw ContractViolation("element exceeds 100 bits");
  SplitEnumerator& en = *en_[x];
  const int old_cap = en.size_cap();
  en.append_element(value);
  placement_[x].push_back(instance_.n());
  instance_.elements.push_back(value);
  const int k = en.m() - 1;
  const int new_cap = en.m() / 2;
  en.set_size_cap(new_cap);
  final_outcome_.reset();
  alias_fallback_ = false;
  if (!started_) return;

  // Every state expanded so far gets a branch that only adds the new index;
  // representatives that sat at the old size cap are expanded in full.
  auto& q = queue(x, current_cycle_);
  const std::size_t existing = en.state_count();
  for (std::size_t id = 0; id < existing; ++id) {
    const PartialState& s = en.state(static_cast<StateId>(id));
    if (!s.expanded || s.size() >= new_cap) continue;
    PartialState branch;
    branch.sum = s.sum;
    branch.mask = s.mask;
    branch.min_extend_index = static_cast<std::int8_t>(k);
    q.push_back(en.add_state(branch));
  }
  // A resumed search only holds its queued states; the memo stands in for
  // the expanded ones it lost.
  if (resumed_) {
    PartialState root;
    root.min_extend_index = static_cast<std::int8_t>(k);
    q.push_back(en.add_state(root));
    for (const MemoTable::Entry& e : en.memo().sorted_entries()) {
      const int size = std::popcount(e.mask);
      if (e.state != kNoState || size >= new_cap) continue;
      if (new_cap > old_cap && size == old_cap) continue;
      PartialState branch;
      branch.sum = e.sum();
      branch.mask = e.mask;
      branch.min_extend_index = static_cast<std::int8_t>(k);
      q.push_back(en.add_state(branch));
    }
  }
  if (new_cap > old_cap) {
    // At cap 0 even the root was never expanded.
    if (old_cap == 0) q.push_back(en.add_state(PartialState{}));
    for (const MemoTable::Entry& e : en.memo().sorted_entries()) {
      if (std::popcount(e.mask) != old_cap) continue;
      PartialState s;
      s.sum = e.sum();
      s.mask = e.mask;
      q.push_back(en.add_state(s));
    }
  }
  recheck_pending_ = true;
}

namespace {

constexpr char kMagic[4] = {'U', 'S', 'S', '1'};
constexpr std::uint32_t kVersion = 1;

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}
  void bytes(const void* p, std::size_t n) { out_.write(static_cast<const char*>(p), static_cast<std::streamsize>(n)); }
  void u8(std::uint8_t v) { bytes(&v, 1); }
  void u32(std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    bytes(b, 4);
  }
  void u64(std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    bytes(b, 8);
  }
  void i32(std::int32_t v) { u32(static_cast<std::uint32_t>(v)); }
  void sum(SumValue v) {
    u64(static_cast<std::uint64_t>(v));
    u64(static_cast<std::uint64_t>(v >> 64));
  }
  void f64(double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    u64(bits);
  }

 private:
  std::ostream& out_;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}
  void bytes(void* p, std::size_t n) {
    if (!in_.read(static_cast<char*>(p), static_cast<std::streamsize>(n)))
      throw InputError("checkpoint truncated");
  }
  std::uint8_t u8() {
    std::uint8_t v;
    bytes(&v, 1);
    return v;
  }
  std::uint32_t u32() {
    unsigned char b[4];
    bytes(b, 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    unsigned char b[8];
    bytes(b, 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
  }
  std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
  SumValue sum() {
    const SumValue lo = u64();
    const SumValue hi = u64();
    return (hi << 64) | lo;
  }
  double f64() {
    const std::uint64_t bits = u64();
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
  }

 private:
  std::istream& in_;
};

void write_stats(Writer& w, const ColumnStats& s) {
  w.i32(s.cycle);
  w.i32(s.column);
  w.u64(s.states_expanded);
  w.u64(s.candidates_generated);
  w.u64(s.new_sums_admitted);
  w.u64(s.collisions_pruned);
  w.u64(s.canonical_replacements);
}

ColumnStats read_stats(Reader& r) {
  ColumnStats s;
  s.cycle = r.i32();
  s.column = r.i32();
  s.states_expanded = r.u64();
  s.candidates_generated = r.u64();
  s.new_sums_admitted = r.u64();
  s.collisions_pruned = r.u64();
  s.canonical_replacements = r.u64();
  return s;
}

}  // namespace

void Search::save(std::ostream& out) const {
  if (final_outcome_ == Outcome::kFound) throw ContractViolation("nothing to checkpoint after FOUND");
  Writer w(out);
  w.bytes(kMagic, 4);
  w.u32(kVersion);
  w.u32(static_cast<std::uint32_t>(instance_.n()));
  w.sum(instance_.target);
  for (SumValue v : instance_.elements) w.sum(v);
  w.i32(config_.alias_count);
  w.u8(config_.anytime ? 1 : 0);
  w.u8(config_.policy == SplitPolicy::kBalancedByProbe ? 1 : 0);
  w.i32(look_ahead_);
  w.i32(current_cycle_);
  w.u8(static_cast<std::uint8_t>((started_ ? 1 : 0) | (roots_checked_ ? 2 : 0) |
                                 (recheck_pending_ ? 4 : 0) | (alias_fallback_ ? 8 : 0) |
                                 (final_outcome_ ? 16 : 0) | (config_.enumerate_only ? 32 : 0)));
  for (int x = 0; x < 2; ++x) {
    const SplitEnumerator& en = *en_[x];
    w.u32(static_cast<std::uint32_t>(en.m()));
    for (int idx : placement_[x]) w.u32(static_cast<std::uint32_t>(idx));
    w.u32(static_cast<std::uint32_t>(en.plan().pairs.size()));
    for (const AliasPair& p : en.plan().pairs) {
      w.u32(static_cast<std::uint32_t>(p.keep));
      w.u32(static_cast<std::uint32_t>(p.alias));
    }
    w.i32(en.size_cap());
    w.u8(en.ambiguous() ? 1 : 0);
    const auto entries = en.memo().sorted_entries();
    w.u64(entries.size());
    for (const auto& e : entries) {
      w.sum(e.sum());
      w.u64(e.mask);
    }
    const auto& qs = queues_[x];
    const std::size_t cycles = qs.size() > static_cast<std::size_t>(current_cycle_)
                                   ? qs.size() - current_cycle_
                                   : 0;
    w.u32(static_cast<std::uint32_t>(cycles));
    for (std::size_t c = current_cycle_; c < qs.size(); ++c) {
      w.u64(qs[c].size());
      for (StateId id : qs[c]) {
        const PartialState& s = en.state(id);
        w.sum(s.sum);
        w.u64(s.mask);
        w.i32(s.last_deferral_index);
        w.u8(static_cast<std::uint8_t>(s.min_extend_index));
        w.u8(static_cast<std::uint8_t>((s.do_not_extend ? 1 : 0) | (s.expanded ? 2 : 0)));
      }
    }
  }
  write_stats(w, totals_);
  w.u64(columns_.size());
  for (const ColumnStats& s : columns_) write_stats(w, s);
  w.u64(cycles_.size());
  for (const CycleReport& c : cycles_) {
    w.i32(c.cycle);
    w.u64(c.states_expanded);
    w.u64(c.new_sums);
    w.u64(c.deferrals);
    w.u64(c.max_column_cost);
    w.f64(c.wall_time);
  }
  if (!out) throw Error("failed to write checkpoint");
}

void Search::save_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open checkpoint for writing: " + path);
  save(out);
}

Search Search::load(std::istream& in, const SolverConfig& runtime) {
  Reader r(in);
  char magic[4];
  r.bytes(magic, 4);
  if (std::memcmp(magic, kMagic, 4) != 0) throw InputError("not a checkpoint file (bad magic)");
  if (r.u32() != kVersion) throw InputError("unsupported checkpoint version");
  Search s;
  const std::uint32_t n = r.u32();
  if (n > static_cast<std::uint32_t>(kMaxElements)) throw InputError("checkpoint: bad element count");
  s.instance_.target = r.sum();
  for (std::uint32_t i = 0; i < n; ++i) s.instance_.elements.push_back(r.sum());
  s.instance_.validate();
  s.config_ = runtime;
  s.config_.alias_count = r.i32();
  s.config_.anytime = r.u8() != 0;
  s.config_.policy = r.u8() != 0 ? SplitPolicy::kBalancedByProbe : SplitPolicy::kAlternating;
  s.config_.parallel = runtime.parallel && !s.config_.anytime;
  s.look_ahead_ = r.i32();
  s.config_.look_ahead = s.look_ahead_;
  s.current_cycle_ = r.i32();
  const std::uint8_t flags = r.u8();
  if (flags & ~0x3Fu) throw InputError("corrupt checkpoint: unknown flag bits");
  s.started_ = flags & 1;
  s.roots_checked_ = flags & 2;
  s.recheck_pending_ = flags & 4;
  s.alias_fallback_ = flags & 8;
  if (flags & 16) s.final_outcome_ = Outcome::kExhausted;
  s.config_.enumerate_only = flags & 32;
  s.resumed_ = true;
  for (int x = 0; x < 2; ++x) {
    const std::uint32_t m = r.u32();
    if (m > static_cast<std::uint32_t>(kMaxSplitSize)) throw InputError("checkpoint: bad split size");
    std::vector<SumValue> values;
    for (std::uint32_t i = 0; i < m; ++i) {
      const std::uint32_t idx = r.u32();
      if (idx >= n) throw InputError("checkpoint: placement out of range");
      s.placement_[x].push_back(static_cast<int>(idx));
      values.push_back(s.instance_.elements[idx]);
    }
    AliasPlan plan;
    plan.split_id = x;
    const std::uint32_t pairs = r.u32();
    for (std::uint32_t i = 0; i < pairs; ++i) {
      AliasPair p;
      p.keep = static_cast<int>(r.u32());
      p.alias = static_cast<int>(r.u32());
      if (p.keep >= static_cast<int>(m) || p.alias >= static_cast<int>(m) ||
          values[p.alias] <= values[p.keep])
        throw InputError("checkpoint: bad alias pair");
      p.delta = values[p.alias] - values[p.keep];
      plan.pairs.push_back(p);
    }
    const int cap = r.i32();
    auto en = std::make_unique<SplitEnumerator>(x, values, plan, cap);
    const bool ambiguous = r.u8() != 0;
    const std::uint64_t entries = r.u64();
    en->memo().reserve(entries);
    for (std::uint64_t i = 0; i < entries; ++i) {
      const SumValue sum = r.sum();
      const std::uint64_t mask = r.u64();
      if (sum == 0 || en->memo().contains(sum)) throw InputError("checkpoint: bad memo entry");
      en->memo().insert(sum, mask, kNoState);
    }
    if (ambiguous) en->mark_ambiguous();
    const std::uint32_t cycles = r.u32();
    for (std::uint32_t c = 0; c < cycles; ++c) {
      const std::uint64_t count = r.u64();
      auto& q = s.queue(x, s.current_cycle_ + static_cast<int>(c));
      for (std::uint64_t i = 0; i < count; ++i) {
        PartialState st;
        st.sum = r.sum();
        st.mask = r.u64();
        st.last_deferral_index = r.i32();
        st.min_extend_index = static_cast<std::int8_t>(r.u8());
        const std::uint8_t sf = r.u8();
        st.do_not_extend = sf & 1;
        st.expanded = sf & 2;
        if (en->aliased_sum_of(st.mask) != st.sum) throw InputError("checkpoint: inconsistent state");
        const StateId id = en->add_state(st);
        if (MemoTable::Entry* e = en->memo().find(st.sum); e && e->mask == st.mask) e->state = id;
        q.push_back(id);
      }
    }
    s.en_[x] = std::move(en);
  }
  s.totals_ = read_stats(r);
  const std::uint64_t columns = r.u64();
  for (std::uint64_t i = 0; i < columns; ++i) s.columns_.push_back(read_stats(r));
  const std::uint64_t cycles = r.u64();
  for (std::uint64_t i = 0; i < cycles; ++i) {
    CycleReport c;
    c.cycle = r.i32();
    c.states_expanded = r.u64();
    c.new_sums = r.u64();
    c.deferrals = r.u64();
    c.max_column_cost = r.u64();
    c.wall_time = r.f64();
    s.cycles_.push_back(c);
  }
  return s;
}

Search Search::load_file(const std::string& path, const SolverConfig& runtime) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open checkpoint: " + path);
  return load(in, runtime);
}

}  // namespace uss
