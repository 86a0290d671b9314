#include "copp/epe.hpp"

namespace copp {

std::vector<double> extract_extremes(std::span<const double> values) {
  if (values.empty()) throw ContractViolation("extract_extremes needs a non-empty series");
  const std::size_t n = values.size();
  if (n <= 2) return {values.begin(), values.end()};

  std::vector<double> kept;
  kept.push_back(values.front());
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double prev = values[i - 1];
    const double cur = values[i];
    const double next = values[i + 1];
    const bool minimum = (cur < prev && cur <= next) || (cur <= prev && cur < next);
    const bool maximum = (prev < cur && next <= cur) || (prev <= cur && next < cur);
    if (minimum || maximum) kept.push_back(cur);
  }
  kept.push_back(values.back());
  return kept;
}

TimeSeries extract_extremes(const TimeSeries& series) {
  return TimeSeries{series.id, extract_extremes(std::span<const double>(series.values)),
                    series.label, series.label_token};
}

BinaryDataset shrink_dataset(const BinaryDataset& dataset) {
  std::vector<TimeSeries> positives;
  std::vector<TimeSeries> negatives;
  positives.reserve(dataset.positives().size());
  negatives.reserve(dataset.negatives().size());
  for (const auto& s : dataset.positives()) positives.push_back(extract_extremes(s));
  for (const auto& s : dataset.negatives()) negatives.push_back(extract_extremes(s));
  return BinaryDataset(std::move(positives), std::move(negatives));
}

}  // namespace copp
