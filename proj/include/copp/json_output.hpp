#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "copp/features.hpp"
#include "copp/miner.hpp"
#include "copp/topk.hpp"

namespace copp {

/// Writes the top-k set as a JSON array, one object per line, in result order:
/// {"pattern":[1,3,2],"direction":"forward","r_plus":1.000000,...}.
/// Numbers use six decimal places so output is byte-stable.
void write_topk_json(std::ostream& out, std::span<const TopKEntry> entries);

/// Reads patterns back from write_topk_json output, preserving order.
std::vector<OpPattern> read_topk_patterns(std::istream& in);

/// Run counters: per-level candidate and pruning counts plus the final set.
void write_run_report_json(std::ostream& out, const MineResult& result, const MinerConfig& config);

void write_cross_validation_json(std::ostream& out, const CrossValidation& cv, std::size_t folds,
                                 std::size_t neighbors, std::uint64_t seed);

const char* to_string(FusionMode mode) noexcept;
const char* to_string(CandidateOrder order) noexcept;

/// Six-decimal fixed formatting used by every numeric output.
std::string fixed6(double value);

}  // namespace copp
