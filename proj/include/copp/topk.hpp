#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "copp/core.hpp"
#include "copp/occurrence.hpp"

namespace copp {

struct TopKEntry {
  OpPattern pattern;
  double contrast = 0.0;
  Direction direction = Direction::Forward;
  double r_plus = 0.0;
  double r_minus = 0.0;
};

/// Result ordering: contrast descending, then shorter pattern, then
/// lexicographically smaller rank vector.
bool ranks_before(const TopKEntry& a, const TopKEntry& b) noexcept;

/// Bounded set of the k highest-contrast patterns.
///
/// c_min() is 0 until k entries are held, then the smallest held contrast.
/// Only strictly positive contrasts are admitted, and a full set only admits
/// a contrast strictly above c_min(); incumbents win ties at the boundary.
class TopKSet {
 public:
  explicit TopKSet(std::size_t capacity);

  /// Returns true if the entry was admitted.
  bool offer(TopKEntry entry);

  double c_min() const noexcept { return c_min_; }
  std::size_t capacity() const noexcept { return capacity_; }
  bool full() const noexcept { return entries_.size() == capacity_; }
  std::size_t size() const noexcept { return entries_.size(); }
  std::span<const TopKEntry> entries() const noexcept { return entries_; }

 private:
  std::size_t capacity_;
  std::vector<TopKEntry> entries_;
  double c_min_ = 0.0;
};

}  // namespace copp
