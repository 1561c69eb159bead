#include "uss/memo.hpp"

#include <algorithm>

namespace uss {

std::vector<MemoTable::Entry> MemoTable::sorted_entries() const {
  std::vector<Entry> out;
  out.reserve(size_);
  for_each([&](const Entry& e) { out.push_back(e); });
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.sum() < b.sum(); });
  return out;
}

}  // namespace uss
