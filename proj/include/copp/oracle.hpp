#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "copp/core.hpp"
#include "copp/occurrence.hpp"
#include "copp/topk.hpp"

namespace copp {

/// Exact supports of every pattern that occurs in the dataset, found by
/// ranking each sliding window directly (no fusion, pruning or reuse).
struct OracleReport {
  std::size_t max_len = 0;
  /// by_length[m] maps each occurring length-m pattern to its statistics;
  /// entries 0 and 1 are unused.
  std::vector<std::map<OpPattern, PatternStats>> by_length;
  std::size_t positives = 0;
  std::size_t negatives = 0;
};

/// Requires max_len >= 2.
OracleReport enumerate_supports(const BinaryDataset& dataset, double minden, std::size_t max_len);

/// The k best patterns of length >= 3 by direction-signed contrast, in
/// result order. Length-2 patterns only seed the miner and are never scored.
std::vector<TopKEntry> oracle_topk(const OracleReport& report, std::size_t k);

}  // namespace copp
