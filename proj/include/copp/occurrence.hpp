#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "copp/core.hpp"
#include "copp/pattern_algebra.hpp"

namespace copp {

/// Occurrences of one pattern in one series, all sorted ascending.
///
/// `all` is L (every occurrence end position). `prefix_avail` and
/// `suffix_avail` start equal to L and shrink as positions are consumed by
/// super-patterns while the pattern acts as prefix or suffix respectively.
struct Occurrences {
  std::vector<Position> all;
  std::vector<Position> prefix_avail;
  std::vector<Position> suffix_avail;

  static Occurrences from_positions(std::vector<Position> positions);

  std::size_t support() const noexcept { return all.size(); }

  friend bool operator==(const Occurrences&, const Occurrences&) = default;
};

/// Occurrences of (1,2) and (2,1) from one scan. Tied neighbours join neither.
struct SeedOccurrences {
  Occurrences rising;
  Occurrences falling;
};

SeedOccurrences seed_length2(std::span<const double> values);

/// Super-pattern occurrences produced by one SRC join.
struct SrcOutcome {
  std::vector<Position> first;
  std::vector<Position> second;
  /// Merge steps taken; zero when either available set was empty.
  std::size_t join_steps = 0;
};

/// Support-rate-calculation join for one series.
///
/// Walks prefix.prefix_avail and suffix.suffix_avail together looking for
/// l_p, l_q with l_q = l_p + 1. For a general fusion every hit is an
/// occurrence of fusion.first. For a special fusion the window endpoints
/// t[l_q - m] and t[l_q] decide: lower first -> fusion.first, higher first ->
/// fusion.second, equal -> neither. Each hit that becomes an occurrence is
/// removed from both available sets. `m` is the length of the sub-patterns.
SrcOutcome src_fuse(Occurrences& prefix, Occurrences& suffix, const FusionResult& fusion,
                    std::span<const double> values, std::size_t m);

/// Class support rate as an exact fraction hits/total.
struct ClassRate {
  std::size_t hits = 0;
  std::size_t total = 0;

  double value() const noexcept {
    return total == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(total);
  }
};

/// Count C(p,t): 1 iff support / length > minden.
bool exceeds_density(std::size_t support, std::size_t length, double minden) noexcept;

/// Per-series and per-class statistics of one pattern.
struct PatternStats {
  std::vector<std::size_t> support;  // positives then negatives
  std::vector<double> density;
  std::vector<int> count;
  ClassRate positive;
  ClassRate negative;

  double r_plus() const noexcept { return positive.value(); }
  double r_minus() const noexcept { return negative.value(); }
};

/// Throws ConfigError unless 0 <= minden <= 1.
void validate_minden(double minden);

/// Builds PatternStats from per-series supports (positives first, in dataset
/// order). Densities use the lengths of the series in `dataset`.
PatternStats support_rate(std::span<const std::size_t> supports, const BinaryDataset& dataset,
                          double minden);

enum class Direction { Forward, Reverse };

const char* to_string(Direction d) noexcept;

/// Signed contrast hits_a/total_a - hits_b/total_b, computed from a single
/// integer numerator so equal fractions always give the identical double.
double contrast_of(const ClassRate& a, const ClassRate& b) noexcept;

/// Forward: r+ - r-. Reverse: r- - r+.
double contrast(const PatternStats& stats, Direction direction) noexcept;

/// Text dump of L / P / S per series, one line each.
void dump_occurrences(std::ostream& out, const OpPattern& pattern,
                      std::span<const Occurrences> per_series);

}  // namespace copp
