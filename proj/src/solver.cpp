#include "uss/solver.hpp"

#include <algorithm>
#include <cctype>

#include "uss/analysis.hpp"
#include "uss/scheduler.hpp"

namespace uss {

const char* to_string(SplitPolicy policy) {
  return policy == SplitPolicy::kAlternating ? "ALTERNATING" : "BALANCED_BY_PROBE";
}

SplitPolicy parse_split_policy(const std::string& name) {
  std::string up = name;
  std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
  std::replace(up.begin(), up.end(), '-', '_');
  if (up == "ALTERNATING") return SplitPolicy::kAlternating;
  if (up == "BALANCED_BY_PROBE" || up == "BALANCED") return SplitPolicy::kBalancedByProbe;
  throw InputError("unknown split policy: " + name);
}

const char* to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::kFound: return "FOUND";
    case Outcome::kExhausted: return "EXHAUSTED";
    case Outcome::kPaused: return "PAUSED";
  }
  return "?";
}

SplitPair split_instance(const Instance& instance, SplitPolicy policy) {
  if (instance.n() < 2) throw ContractViolation("degenerate instance: fewer than 2 elements");
  if (instance.n() > kMaxElements) throw ContractViolation("instance exceeds 128 elements");
  SplitPair p;
  for (int i = 0; i < instance.n(); ++i) {
    if (i % 2 == 0) {
      p.l0.push_back(instance.elements[i]);
      p.placement0.push_back(i);
    } else {
      p.l1.push_back(instance.elements[i]);
      p.placement1.push_back(i);
    }
  }
  if (policy == SplitPolicy::kBalancedByProbe) {
    for (const auto& [i, j] : suggest_rebalance(p.l0, p.l1)) {
      std::swap(p.l0[i], p.l1[j]);
      std::swap(p.placement0[i], p.placement1[j]);
    }
  }
  for (SumValue v : p.l0) p.sum_l0 += v;
  for (SumValue v : p.l1) p.sum_l1 += v;
  return p;
}

namespace {

// A subset of `side` with true sum `value`, taken from its memo (or the
// empty subset when value is 0).
std::optional<SubsetMask> find_true_sum(const SplitView& side, SumValue value) {
  if (value == 0) return SubsetMask{0, side.m()};
  for (SumValue offset : side.plan->delta_offsets()) {
    if (value <= offset) continue;
    const SumValue key = value - offset;
    const MemoTable::Entry* e = side.memo->find(key);
    if (e == nullptr) continue;
    for (const Resolution& r : resolve_candidates(key, SubsetMask{e->mask, side.m()}, *side.plan))
      if (r.true_sum == value) return r.mask;
  }
  return std::nullopt;
}

std::optional<SolutionReport> report(int lemma, SumValue target, const SplitView& own,
                                     const SubsetMask& own_mask, const SplitView& other,
                                     const SubsetMask& other_mask) {
  const SumValue sum = true_sum(own_mask, *own.values) + true_sum(other_mask, *other.values);
  if (sum != target) return std::nullopt;
  SolutionReport r;
  r.lemma_id = lemma;
  r.original_indices = combine(own_mask, other_mask, *own.placement, *other.placement);
  r.verified_sum = sum;
  return r;
}

}  // namespace

std::optional<SolutionReport> check(const PartialState& candidate, SumValue target,
                                    const SplitView& own, const SplitView& other) {
  const SubsetMask empty_other{0, other.m()};
  const auto options = resolve_candidates(candidate.sum, SubsetMask{candidate.mask, own.m()}, *own.plan);

  for (const Resolution& o : options)  // L1
    if (o.true_sum == target)
      if (auto r = report(1, target, own, o.mask, other, empty_other)) return r;
  for (const Resolution& o : options)  // L3
    if (o.true_sum <= own.total && own.total - o.true_sum == target)
      if (auto r = report(3, target, own, mask_complement(o.mask), other, empty_other)) return r;

  for (const Resolution& o : options) {  // L2, L5
    if (o.true_sum >= target) continue;
    const SumValue need = target - o.true_sum;
    if (auto b = find_true_sum(other, need); b && b->bits != 0)
      if (auto r = report(2, target, own, o.mask, other, *b)) return r;
    if (need <= other.total)
      if (auto b = find_true_sum(other, other.total - need))
        if (auto r = report(5, target, own, o.mask, other, mask_complement(*b))) return r;
  }
  for (const Resolution& o : options) {  // L4
    if (o.true_sum > own.total) continue;
    const SumValue rest = own.total - o.true_sum;
    if (rest >= target) continue;
    const SumValue need = target - rest;
    const SubsetMask own_comp = mask_complement(o.mask);
    if (auto b = find_true_sum(other, need))
      if (auto r = report(4, target, own, own_comp, other, *b)) return r;
    if (need <= other.total)
      if (auto b = find_true_sum(other, other.total - need))
        if (auto r = report(4, target, own, own_comp, other, mask_complement(*b))) return r;
  }
  return std::nullopt;
}

bool verify_solution(const std::vector<int>& indices, const Instance& instance, SumValue target) {
  std::vector<bool> seen(instance.elements.size(), false);
  SumValue sum = 0;
  for (int i : indices) {
    if (i < 0 || i >= instance.n() || seen[i]) return false;
    seen[i] = true;
    sum += instance.elements[i];
  }
  return sum == target;
}

Decision solve(const Instance& instance, const SolverConfig& config) {
  instance.validate();
  if (instance.n() < 2) {
    Decision d;
    if (instance.elements[0] == instance.target) {
      d.outcome = Outcome::kFound;
      d.solution = SolutionReport{1, {0}, instance.target, 0, 0};
    }
    return d;
  }
  Search search(instance, config);
  return search.run_cycles();
}

}  // namespace uss
