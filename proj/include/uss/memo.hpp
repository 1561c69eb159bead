#pragma once

#include <cstdint>
#include <vector>

#include "uss/core.hpp"

namespace uss {

using StateId = std::uint32_t;
inline constexpr StateId kNoState = 0xFFFFFFFFu;

// Open-addressing map from a nonzero sum to its canonical mask and the
// admitted state currently representing it. Sum 0 marks an empty slot; the
// empty subset is never stored.
class MemoTable {
 public:
  struct Entry {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    std::uint64_t mask = 0;
    StateId state = kNoState;

    SumValue sum() const { return (SumValue{hi} << 64) | lo; }
    bool empty() const { return lo == 0 && hi == 0; }
  };

  MemoTable() { rehash(16); }

  std::size_t size() const { return size_; }
  std::uint64_t insertions() const { return insertions_; }

  void reserve(std::size_t n) {
    std::size_t cap = 16;
    while (cap * 7 < n * 10) cap <<= 1;
    if (cap > slots_.size()) rehash(cap);
  }

  static std::uint64_t hash(SumValue s) {
    std::uint64_t x = static_cast<std::uint64_t>(s) ^
                      (static_cast<std::uint64_t>(s >> 64) * 0x9E3779B97F4A7C15ull);
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdull;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ull;
    x ^= x >> 33;
    return x;
  }

  void prefetch(SumValue s) const {
    __builtin_prefetch(&slots_[hash(s) & slot_mask_]);
  }

  Entry* find(SumValue s) {
    const auto lo = static_cast<std::uint64_t>(s);
    const auto hi = static_cast<std::uint64_t>(s >> 64);
    for (std::size_t i = hash(s) & slot_mask_;; i = (i + 1) & slot_mask_) {
      Entry& e = slots_[i];
      if (e.lo == lo && e.hi == hi) return &e;
      if (e.empty()) return nullptr;
    }
  }
  const Entry* find(SumValue s) const { return const_cast<MemoTable*>(this)->find(s); }
  bool contains(SumValue s) const { return find(s) != nullptr; }

  // Precondition: s != 0 and s is absent.
  Entry& insert(SumValue s, std::uint64_t mask, StateId state) {
    if ((size_ + 1) * 10 > slots_.size() * 7) rehash(slots_.size() * 2);
    Entry& e = probe_empty(s);
    e.lo = static_cast<std::uint64_t>(s);
    e.hi = static_cast<std::uint64_t>(s >> 64);
    e.mask = mask;
    e.state = state;
    ++size_;
    ++insertions_;
    return e;
  }

  template <class F>
  void for_each(F&& f) const {
    for (const Entry& e : slots_)
      if (!e.empty()) f(e);
  }

  // Entries in ascending sum order; for deterministic output.
  std::vector<Entry> sorted_entries() const;

  void clear() {
    size_ = 0;
    insertions_ = 0;
    slots_.assign(16, Entry{});
    slot_mask_ = 15;
  }

 private:
  Entry& probe_empty(SumValue s) {
    std::size_t i = hash(s) & slot_mask_;
    while (!slots_[i].empty()) i = (i + 1) & slot_mask_;
    return slots_[i];
  }

  void rehash(std::size_t cap) {
    std::vector<Entry> old;
    old.swap(slots_);
    slots_.assign(cap, Entry{});
    slot_mask_ = cap - 1;
    for (const Entry& e : old)
      if (!e.empty()) probe_empty(e.sum()) = e;
  }

  std::vector<Entry> slots_;
  std::size_t slot_mask_ = 0;
  std::size_t size_ = 0;
  std::uint64_t insertions_ = 0;
};

}  // namespace uss
