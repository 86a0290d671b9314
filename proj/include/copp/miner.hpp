#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "copp/core.hpp"
#include "copp/occurrence.hpp"
#include "copp/pattern_algebra.hpp"
#include "copp/topk.hpp"

namespace copp {

/// How length-(m+1) candidates are produced from the length-m candidates.
enum class FusionMode {
  Grouped,    ///< cross-group fusion only; complete on extreme-point data
  AllPairs,   ///< every ordered pair, same-group included
  Enumerate,  ///< every pattern extended by each of its m+1 possible last ranks
};

/// Order in which each new candidate level is fused.
enum class CandidateOrder {
  SupportDescending,  ///< support-maximum-first
  SupportAscending,
  Generation,
};

/// Which pruning strategies are enabled.
struct PruningStrategies {
  bool zero_rate = true;      ///< 1: forward, r(p, D1) == 0
  bool forward_bound = true;  ///< 2: forward, r(p, D1) <= c_min once c_min > 0
  bool reverse_bound = true;  ///< 3: reverse, r(p, D1) <= c_min

  static PruningStrategies none() noexcept { return {false, false, false}; }
  bool all() const noexcept { return zero_rate && forward_bound && reverse_bound; }
};

enum class PruneDecision { Keep, Strategy1, Strategy2, Strategy3 };

struct MinerConfig {
  double minden = 0.01;
  std::size_t k = 10;
  /// Longest pattern to generate; unbounded when absent.
  std::optional<std::size_t> max_len;
  /// Apply extreme point extraction before mining.
  bool epe = true;
  FusionMode fusion = FusionMode::Grouped;
  PruningStrategies pruning;
  CandidateOrder order = CandidateOrder::SupportDescending;
};

/// Counters for one generated level of one pass.
struct LevelReport {
  Direction direction = Direction::Forward;
  std::size_t length = 0;  ///< length of the generated patterns
  std::size_t group1_sources = 0;
  std::size_t group2_sources = 0;
  std::size_t fusion_checks = 0;  ///< prefix/suffix pairs tested
  std::size_t generated = 0;      ///< candidate super-patterns evaluated
  std::size_t pruned_s1 = 0;
  std::size_t pruned_s2 = 0;
  std::size_t pruned_s3 = 0;
  std::size_t kept_group1 = 0;
  std::size_t kept_group2 = 0;
  /// Candidates the enumeration strategy would evaluate from the same sources.
  std::size_t enumeration_bound = 0;
};

struct MineResult {
  TopKSet top{1};
  std::vector<LevelReport> levels;
  double c_min_after_forward = 0.0;
  /// True when grouped fusion was requested on data without extreme point
  /// extraction and all-pairs fusion ran instead.
  bool fusion_fell_back = false;
  FusionMode fusion_used = FusionMode::Grouped;
  std::size_t peak_length = 0;
  double elapsed_seconds = 0.0;

  std::size_t total_generated() const noexcept;
  std::size_t total_pruned() const noexcept;
};

/// Emitted for every evaluated candidate.
struct FusionEvent {
  Direction direction;
  const OpPattern& prefix;
  const OpPattern& suffix;
  const OpPattern& produced;
  ClassRate prefix_rate;  ///< rates are in the pass's D1
  ClassRate suffix_rate;
  ClassRate produced_rate;
  std::span<const std::size_t> supports_d1;
  PruneDecision decision;
};

struct OfferEvent {
  Direction direction;
  const TopKEntry& entry;
  bool accepted;
  double c_min_after;
};

/// Emitted when a level has been fully consumed; the occurrences show the
/// state of the available sets after all fusions of that level (D1 only).
struct LevelStateEvent {
  Direction direction;
  const OpPattern& pattern;
  std::span<const Occurrences> occurrences_d1;
};

/// Optional hooks for tests, dumps and instrumentation.
struct MinerObserver {
  std::function<void(const FusionEvent&)> on_fusion;
  std::function<void(const OfferEvent&)> on_offer;
  std::function<void(const LevelStateEvent&)> on_level_state;
};

/// Keep/prune decision for a candidate with support rate `rate_d1` in the
/// pass's own class D1. Strategy 2 needs c_min > 0. Strategy 3 compares
/// against c_min as is: with c_min == 0 nothing with a zero rate can enter Q.
PruneDecision apply_pruning(const ClassRate& rate_d1, double c_min, Direction direction,
                            const PruningStrategies& strategies) noexcept;

/// One mining pass (forward when D1 = D+, reverse when D1 = D-). Offers every
/// surviving candidate of length >= 3 to `top` and appends level counters.
void contrast_pass(std::span<const TimeSeries> d1, std::span<const TimeSeries> d2,
                   const MinerConfig& config, Direction direction, TopKSet& top,
                   std::vector<LevelReport>& levels, const MinerObserver* observer = nullptr);

/// Full pipeline: optional extreme point extraction, forward pass, then
/// reverse pass reusing the forward top-k set.
MineResult mine(const BinaryDataset& dataset, const MinerConfig& config,
                const MinerObserver* observer = nullptr);

}  // namespace copp
