#include "copp/occurrence.hpp"

#include <ostream>

namespace copp {

Occurrences Occurrences::from_positions(std::vector<Position> positions) {
  Occurrences o;
  o.prefix_avail = positions;
  o.suffix_avail = positions;
  o.all = std::move(positions);
  return o;
}

SeedOccurrences seed_length2(std::span<const double> values) {
  std::vector<Position> rising;
  std::vector<Position> falling;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i - 1] < values[i]) {
      rising.push_back(static_cast<Position>(i + 1));
    } else if (values[i - 1] > values[i]) {
      falling.push_back(static_cast<Position>(i + 1));
    }
  }
  return {Occurrences::from_positions(std::move(rising)),
          Occurrences::from_positions(std::move(falling))};
}

SrcOutcome src_fuse(Occurrences& prefix, Occurrences& suffix, const FusionResult& fusion,
                    std::span<const double> values, std::size_t m) {
  if (m < 2 || fusion.first.size() != m + 1 ||
      (fusion.is_special() && (!fusion.second || fusion.second->size() != m + 1))) {
    throw ContractViolation("fusion result does not extend length-" + std::to_string(m) +
                            " patterns");
  }
  auto in_range = [&](const std::vector<Position>& v) {
    return v.empty() || (v.front() >= m && v.back() <= values.size());
  };
  if (!in_range(prefix.prefix_avail) || !in_range(suffix.suffix_avail)) {
    throw ContractViolation("occurrence positions do not belong to this series");
  }

  SrcOutcome out;
  auto& pa = prefix.prefix_avail;
  auto& sa = suffix.suffix_avail;
  if (pa.empty() || sa.empty()) return out;

  std::vector<Position> pa_left;
  std::vector<Position> sa_left;
  pa_left.reserve(pa.size());
  sa_left.reserve(sa.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < pa.size() && j < sa.size()) {
    ++out.join_steps;
    const Position lp = pa[i];
    const Position lq = sa[j];
    if (lp + 1 == lq) {
      bool consumed = true;
      if (!fusion.is_special()) {
        out.first.push_back(lq);
      } else {
        const double first = values[lq - m - 1];
        const double last = values[lq - 1];
        if (first < last) {
          out.first.push_back(lq);
        } else if (first > last) {
          out.second.push_back(lq);
        } else {
          consumed = false;
        }
      }
      if (!consumed) {
        pa_left.push_back(lp);
        sa_left.push_back(lq);
      }
      ++i;
      ++j;
    } else if (lp + 1 < lq) {
      pa_left.push_back(lp);
      ++i;
    } else {
      sa_left.push_back(lq);
      ++j;
    }
  }
  pa_left.insert(pa_left.end(), pa.begin() + static_cast<std::ptrdiff_t>(i), pa.end());
  sa_left.insert(sa_left.end(), sa.begin() + static_cast<std::ptrdiff_t>(j), sa.end());
  pa = std::move(pa_left);
  sa = std::move(sa_left);
  return out;
}

bool exceeds_density(std::size_t support, std::size_t length, double minden) noexcept {
  if (length == 0) return false;
  return static_cast<double>(support) / static_cast<double>(length) > minden;
}

void validate_minden(double minden) {
  if (!(minden >= 0.0 && minden <= 1.0)) {
    throw ConfigError("minden must lie in [0, 1], got " + std::to_string(minden));
  }
}

PatternStats support_rate(std::span<const std::size_t> supports, const BinaryDataset& dataset,
                          double minden) {
  validate_minden(minden);
  const auto series = dataset.all();
  if (supports.size() != series.size()) {
    throw ContractViolation("expected " + std::to_string(series.size()) + " supports, got " +
                            std::to_string(supports.size()));
  }
  PatternStats stats;
  stats.positive.total = dataset.positives().size();
  stats.negative.total = dataset.negatives().size();
  for (std::size_t i = 0; i < series.size(); ++i) {
    const std::size_t len = series[i]->values.size();
    const bool counted = exceeds_density(supports[i], len, minden);
    stats.support.push_back(supports[i]);
    stats.density.push_back(static_cast<double>(supports[i]) / static_cast<double>(len));
    stats.count.push_back(counted ? 1 : 0);
    if (counted) {
      if (series[i]->label == ClassLabel::Positive) {
        ++stats.positive.hits;
      } else {
        ++stats.negative.hits;
      }
    }
  }
  return stats;
}

const char* to_string(Direction d) noexcept {
  return d == Direction::Forward ? "forward" : "reverse";
}

double contrast_of(const ClassRate& a, const ClassRate& b) noexcept {
  if (a.total == 0 || b.total == 0) return a.value() - b.value();
  const auto num = static_cast<long long>(a.hits * b.total) - static_cast<long long>(b.hits * a.total);
  return static_cast<double>(num) / static_cast<double>(a.total * b.total);
}

double contrast(const PatternStats& stats, Direction direction) noexcept {
  return direction == Direction::Forward ? contrast_of(stats.positive, stats.negative)
                                         : contrast_of(stats.negative, stats.positive);
}

void dump_occurrences(std::ostream& out, const OpPattern& pattern,
                      std::span<const Occurrences> per_series) {
  auto list = [&](const std::vector<Position>& v) {
    out << '{';
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
    out << '}';
  };
  for (std::size_t s = 0; s < per_series.size(); ++s) {
    out << pattern.to_string() << " series " << s + 1 << " L=";
    list(per_series[s].all);
    out << " P=";
    list(per_series[s].prefix_avail);
    out << " S=";
    list(per_series[s].suffix_avail);
    out << '\n';
  }
}

}  // namespace copp
