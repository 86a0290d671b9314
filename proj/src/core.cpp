#include "copp/core.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>
#include <unordered_set>

namespace copp {

ParseError::ParseError(std::size_t row, std::size_t column, const std::string& what)
    : Error("row " + std::to_string(row) + ", column " + std::to_string(column) + ": " + what),
      row_(row),
      column_(column) {}

namespace {

bool is_permutation_of_1_to_m(const std::vector<int>& ranks) {
  std::vector<bool> seen(ranks.size() + 1, false);
  for (int r : ranks) {
    if (r < 1 || static_cast<std::size_t>(r) > ranks.size() || seen[r]) return false;
    seen[r] = true;
  }
  return true;
}

}  // namespace

OpPattern::OpPattern(std::vector<int> ranks) : ranks_(std::move(ranks)) {
  if (ranks_.size() < 2) throw ContractViolation("pattern needs at least two ranks");
  if (!is_permutation_of_1_to_m(ranks_)) {
    throw ContractViolation("ranks " + to_string() + " are not a permutation of 1.." +
                            std::to_string(ranks_.size()));
  }
}

OpPattern OpPattern::trusted(std::vector<int> ranks) noexcept {
  OpPattern p;
  p.ranks_ = std::move(ranks);
  return p;
}

OpPattern OpPattern::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (!text.empty() && text.front() == '(') {
    if (text.back() != ')') throw ContractViolation("unbalanced pattern text");
    text = text.substr(1, text.size() - 2);
  }
  std::vector<int> ranks;
  while (!text.empty()) {
    auto comma = text.find(',');
    auto token = trim(text.substr(0, comma));
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty()) {
      throw ContractViolation("bad rank '" + std::string(token) + "' in pattern");
    }
    ranks.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return OpPattern(std::move(ranks));
}

std::string OpPattern::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < ranks_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(ranks_[i]);
  }
  out += ')';
  return out;
}

std::size_t OpPatternHash::operator()(const OpPattern& p) const noexcept {
  std::size_t h = p.size();
  for (int r : p.ranks()) h ^= static_cast<std::size_t>(r) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

bool shorter_then_lexicographic(const OpPattern& a, const OpPattern& b) noexcept {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

BinaryDataset::BinaryDataset(std::vector<TimeSeries> positives, std::vector<TimeSeries> negatives)
    : positives_(std::move(positives)), negatives_(std::move(negatives)) {
  if (positives_.empty()) throw DatasetError("positive class is empty");
  if (negatives_.empty()) throw DatasetError("negative class is empty");
  std::unordered_set<std::string> ids;
  auto check = [&](TimeSeries& s, ClassLabel label) {
    s.label = label;
    if (s.values.empty()) throw DatasetError("series '" + s.id + "' has no values");
    for (double v : s.values) {
      if (!std::isfinite(v)) throw DatasetError("series '" + s.id + "' has a non-finite value");
    }
    if (!ids.insert(s.id).second) throw DatasetError("duplicate series id '" + s.id + "'");
  };
  for (auto& s : positives_) check(s, ClassLabel::Positive);
  for (auto& s : negatives_) check(s, ClassLabel::Negative);
}

std::vector<const TimeSeries*> BinaryDataset::all() const {
  std::vector<const TimeSeries*> out;
  out.reserve(size());
  for (const auto& s : positives_) out.push_back(&s);
  for (const auto& s : negatives_) out.push_back(&s);
  return out;
}

BinaryDataset BinaryDataset::swapped() const { return BinaryDataset(negatives_, positives_); }

std::optional<OpPattern> relative_order(std::span<const double> values) {
  if (values.size() < 2) throw ContractViolation("relative_order needs at least two values");
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return values[a] < values[b]; });
  std::vector<int> ranks(values.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    if (r > 0 && values[order[r]] == values[order[r - 1]]) return std::nullopt;
    ranks[order[r]] = static_cast<int>(r) + 1;
  }
  return OpPattern::trusted(std::move(ranks));
}

std::optional<OpPattern> window_pattern(std::span<const double> values, std::size_t end,
                                        std::size_t m) {
  if (m < 2 || end < m || end > values.size()) {
    throw ContractViolation("window of length " + std::to_string(m) + " ending at " +
                            std::to_string(end) + " is outside a series of length " +
                            std::to_string(values.size()));
  }
  return relative_order(values.subspan(end - m, m));
}

std::optional<OpPattern> window_pattern(const TimeSeries& series, std::size_t end, std::size_t m) {
  return window_pattern(std::span<const double>(series.values), end, m);
}

std::size_t count_occurrences(std::span<const double> values, const OpPattern& pattern) {
  const std::size_t m = pattern.size();
  if (values.size() < m) return 0;
  // by_rank[r] = offset within the window that must hold the (r+1)-th smallest value
  std::vector<std::size_t> by_rank(m);
  for (std::size_t i = 0; i < m; ++i) by_rank[pattern[i] - 1] = i;
  std::size_t count = 0;
  for (std::size_t start = 0; start + m <= values.size(); ++start) {
    bool match = true;
    for (std::size_t r = 1; r < m && match; ++r) {
      match = values[start + by_rank[r - 1]] < values[start + by_rank[r]];
    }
    if (match) ++count;
  }
  return count;
}

}  // namespace copp
