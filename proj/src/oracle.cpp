#include "copp/oracle.hpp"

#include <algorithm>

namespace copp {

OracleReport enumerate_supports(const BinaryDataset& dataset, double minden, std::size_t max_len) {
  if (max_len < 2) throw ContractViolation("oracle needs max_len >= 2");
  validate_minden(minden);

  const auto series = dataset.all();
  OracleReport report;
  report.max_len = max_len;
  report.positives = dataset.positives().size();
  report.negatives = dataset.negatives().size();
  report.by_length.resize(max_len + 1);

  for (std::size_t m = 2; m <= max_len; ++m) {
    auto& table = report.by_length[m];
    for (std::size_t s = 0; s < series.size(); ++s) {
      const auto& values = series[s]->values;
      for (std::size_t end = m; end <= values.size(); ++end) {
        auto pattern = window_pattern(*series[s], end, m);
        if (!pattern) continue;
        auto& stats = table[*pattern];
        if (stats.support.empty()) stats.support.assign(series.size(), 0);
        ++stats.support[s];
      }
    }
    for (auto& [pattern, stats] : table) {
      stats.positive = {0, report.positives};
      stats.negative = {0, report.negatives};
      for (std::size_t s = 0; s < series.size(); ++s) {
        const double len = static_cast<double>(series[s]->values.size());
        const double den = static_cast<double>(stats.support[s]) / len;
        const int count = den > minden ? 1 : 0;
        stats.density.push_back(den);
        stats.count.push_back(count);
        if (count) {
          ++(series[s]->label == ClassLabel::Positive ? stats.positive.hits : stats.negative.hits);
        }
      }
    }
  }
  return report;
}

std::vector<TopKEntry> oracle_topk(const OracleReport& report, std::size_t k) {
  std::vector<TopKEntry> all;
  for (std::size_t m = 3; m < report.by_length.size(); ++m) {
    for (const auto& [pattern, stats] : report.by_length[m]) {
      const double forward = contrast_of(stats.positive, stats.negative);
      TopKEntry e{pattern, forward, Direction::Forward, stats.r_plus(), stats.r_minus()};
      if (forward < 0.0) {
        e.contrast = contrast_of(stats.negative, stats.positive);
        e.direction = Direction::Reverse;
      }
      if (e.contrast > 0.0) all.push_back(std::move(e));
    }
  }
  std::sort(all.begin(), all.end(), ranks_before);
  if (all.size() > k) all.resize(k);
  return all;
}

}  // namespace copp
