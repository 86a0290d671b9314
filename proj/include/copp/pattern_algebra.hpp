#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "copp/core.hpp"

namespace copp {

/// Relative order of the first m-1 ranks. Requires m >= 3.
OpPattern prefix_opp(const OpPattern& p);

/// Relative order of the last m-1 ranks. Requires m >= 3.
OpPattern suffix_opp(const OpPattern& p);

/// Outcome of fusing two length-m patterns into length m+1.
///
/// General: the boundary ranks p[0] and q[m-1] differ, so the super-pattern is
/// unique. Special: they are equal and the first and last value of the window
/// decide between `first` (ascending endpoints) and `second` (descending).
struct FusionResult {
  enum class Kind { General, Special };

  Kind kind = Kind::General;
  OpPattern first;
  std::optional<OpPattern> second;

  bool is_special() const noexcept { return kind == Kind::Special; }
};

/// Fuses prefix pattern `p` with suffix pattern `q`. Absent when
/// suffix_opp(p) != prefix_opp(q). Throws ContractViolation if the lengths differ.
std::optional<FusionResult> fuse(const OpPattern& p, const OpPattern& q);

/// Same as fuse() but trusts the caller that the overlap already matches.
FusionResult fuse_matching(const OpPattern& p, const OpPattern& q);

/// Group 1 holds patterns starting with a rise (1,2), group 2 with a fall (2,1).
enum class Group { Rising, Falling };

Group group_of(const OpPattern& p) noexcept;

/// One prefix/suffix pairing; indices refer to the source group lists.
struct FusionPair {
  Group prefix_group;
  std::size_t prefix_index;
  Group suffix_group;
  std::size_t suffix_index;

  /// Group the generated super-patterns belong to.
  Group target() const noexcept { return prefix_group; }

  friend bool operator==(const FusionPair&, const FusionPair&) = default;
};

/// Cross-group pairings: every group-1 x group-2 pair (targets group 1)
/// followed by every group-2 x group-1 pair (targets group 2).
std::vector<FusionPair> group_fusion_pairs(std::size_t group1_size, std::size_t group2_size);

/// All ordered pairs over both groups, same-group pairs included.
std::vector<FusionPair> all_fusion_pairs(std::size_t group1_size, std::size_t group2_size);

}  // namespace copp
