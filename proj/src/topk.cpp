#include "copp/topk.hpp"

#include <algorithm>

namespace copp {

bool ranks_before(const TopKEntry& a, const TopKEntry& b) noexcept {
  if (a.contrast != b.contrast) return a.contrast > b.contrast;
  return shorter_then_lexicographic(a.pattern, b.pattern);
}

TopKSet::TopKSet(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw ConfigError("k must be at least 1");
  entries_.reserve(capacity);
}

bool TopKSet::offer(TopKEntry entry) {
  if (!(entry.contrast > 0.0)) return false;
  if (full()) {
    if (!(entry.contrast > c_min_)) return false;
    entries_.pop_back();
  }
  auto at = std::upper_bound(entries_.begin(), entries_.end(), entry, ranks_before);
  entries_.insert(at, std::move(entry));
  c_min_ = full() ? entries_.back().contrast : 0.0;
  return true;
}

}  // namespace copp
