#pragma once

// Shared fixtures and independent reference computations for the test suites.
// Nothing here calls into the code paths it is used to check.

#include <algorithm>
#include <map>
#include <cmath>
#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "copp/core.hpp"

namespace copp::testing {

inline TimeSeries series(std::string id, std::vector<double> values,
                         ClassLabel label = ClassLabel::Positive) {
  return TimeSeries{std::move(id), std::move(values), label,
                    label == ClassLabel::Positive ? "+" : "-"};
}

/// The six-series example database (three positives, three negatives).
inline BinaryDataset sample() {
  return BinaryDataset({series("1", {4, 2, 6, 5, 9, 8}), series("2", {7, 5, 2, 4, 3, 6}),
                        series("3", {2, 5, 4, 8, 6, 9})},
                       {series("4", {4, 7, 3, 6, 1}, ClassLabel::Negative),
                        series("5", {8, 6, 9, 5, 7}, ClassLabel::Negative),
                        series("6", {9, 7, 6, 5, 7, 8}, ClassLabel::Negative)});
}

inline const char* sample_tsv() {
  return "+\t4\t2\t6\t5\t9\t8\n"
         "+\t7\t5\t2\t4\t3\t6\n"
         "+\t2\t5\t4\t8\t6\t9\n"
         "-\t4\t7\t3\t6\t1\n"
         "-\t8\t6\t9\t5\t7\n"
         "-\t9\t7\t6\t5\t7\t8\n";
}

/// Rank by counting smaller elements, O(m^2); absent on any duplicate.
inline std::optional<std::vector<int>> naive_ranks(const std::vector<double>& v) {
  std::vector<int> ranks(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    int below = 1;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (i != j && v[i] == v[j]) return std::nullopt;
      if (v[j] < v[i]) ++below;
    }
    ranks[i] = below;
  }
  return ranks;
}

/// Extreme points by evaluating each retention condition on its own.
inline std::vector<double> naive_extremes(const std::vector<double>& t) {
  std::vector<double> out;
  const std::size_t n = t.size();
  for (std::size_t i = 0; i < n; ++i) {
    const bool first = i == 0;
    const bool last = i + 1 == n;
    bool keep = first || last;
    if (!keep) {
      const bool min1 = t[i] < t[i - 1] && t[i] <= t[i + 1];
      const bool min2 = t[i] <= t[i - 1] && t[i] < t[i + 1];
      const bool max1 = t[i - 1] < t[i] && t[i + 1] <= t[i];
      const bool max2 = t[i - 1] <= t[i] && t[i + 1] < t[i];
      keep = min1 || min2 || max1 || max2;
    }
    if (keep) out.push_back(t[i]);
  }
  return out;
}

/// Window end positions (1-based) whose naive ranks equal `ranks`.
inline std::vector<Position> naive_positions(const std::vector<double>& t,
                                             const std::vector<int>& ranks) {
  std::vector<Position> out;
  const std::size_t m = ranks.size();
  for (std::size_t end = m; end <= t.size(); ++end) {
    std::vector<double> w(t.begin() + static_cast<std::ptrdiff_t>(end - m),
                          t.begin() + static_cast<std::ptrdiff_t>(end));
    auto r = naive_ranks(w);
    if (r && *r == ranks) out.push_back(static_cast<Position>(end));
  }
  return out;
}

/// Random series without repeated values (values are a shuffled sample).
inline std::vector<double> distinct_series(std::mt19937_64& rng, std::size_t length) {
  std::vector<double> pool(length * 4);
  for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = static_cast<double>(i) * 0.5 - 17.0;
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(length);
  return pool;
}

/// Random tie-free dataset; class sizes at least one each.
inline BinaryDataset random_dataset(std::mt19937_64& rng, std::size_t min_series,
                                    std::size_t max_series, std::size_t min_len,
                                    std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> count(min_series, max_series);
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  const std::size_t total = std::max<std::size_t>(2, count(rng));
  std::uniform_int_distribution<std::size_t> split(1, total - 1);
  const std::size_t positives = split(rng);
  std::vector<TimeSeries> pos;
  std::vector<TimeSeries> neg;
  for (std::size_t i = 0; i < total; ++i) {
    const auto label = i < positives ? ClassLabel::Positive : ClassLabel::Negative;
    auto s = series("s" + std::to_string(i), distinct_series(rng, len(rng)), label);
    (i < positives ? pos : neg).push_back(std::move(s));
  }
  return BinaryDataset(std::move(pos), std::move(neg));
}


/// Per-pattern class hit counts (series whose density exceeds minden),
/// for every pattern of length 3..max_len that occurs anywhere.
struct NaiveHits {
  std::size_t positive = 0;
  std::size_t negative = 0;
};

inline std::map<std::vector<int>, NaiveHits> naive_hits(const BinaryDataset& d, double minden,
                                                        std::size_t max_len) {
  std::map<std::vector<int>, NaiveHits> table;
  for (const auto* s : d.all()) {
    const auto& t = s->values;
    std::map<std::vector<int>, std::size_t> local;
    for (std::size_t m = 3; m <= max_len; ++m) {
      for (std::size_t end = m; end <= t.size(); ++end) {
        std::vector<double> w(t.begin() + static_cast<std::ptrdiff_t>(end - m),
                              t.begin() + static_cast<std::ptrdiff_t>(end));
        if (auto r = naive_ranks(w)) ++local[*r];
      }
    }
    for (const auto& [ranks, sup] : local) {
      auto& h = table[ranks];
      if (static_cast<double>(sup) / static_cast<double>(t.size()) > minden) {
        ++(s->label == ClassLabel::Positive ? h.positive : h.negative);
      }
    }
  }
  return table;
}

/// Best achievable absolute contrasts, descending, at most k of them.
inline std::vector<double> naive_top_contrasts(const BinaryDataset& d, double minden,
                                               std::size_t max_len, std::size_t k) {
  const double np = static_cast<double>(d.positives().size());
  const double nn = static_cast<double>(d.negatives().size());
  std::vector<double> all;
  for (const auto& [ranks, h] : naive_hits(d, minden, max_len)) {
    const double c = std::abs(static_cast<double>(h.positive) / np -
                              static_cast<double>(h.negative) / nn);
    if (c > 1e-12) all.push_back(c);
  }
  std::sort(all.rbegin(), all.rend());
  if (all.size() > k) all.resize(k);
  return all;
}

}  // namespace copp::testing
