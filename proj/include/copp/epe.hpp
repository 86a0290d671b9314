#pragma once

#include <span>
#include <vector>

#include "copp/core.hpp"

namespace copp {

/// Extreme point extraction. Keeps the first and last values plus every local
/// minimum (t[i] < t[i-1] && t[i] <= t[i+1], or t[i] <= t[i-1] && t[i] < t[i+1])
/// and local maximum (the mirrored conditions), in their original order.
/// Mixed strict/non-strict comparisons mean a plateau edge can be kept.
std::vector<double> extract_extremes(std::span<const double> values);

/// Shrunk copy of `series`; id and label are carried over.
TimeSeries extract_extremes(const TimeSeries& series);

/// Applies extract_extremes to every series (D -> D').
BinaryDataset shrink_dataset(const BinaryDataset& dataset);

}  // namespace copp
