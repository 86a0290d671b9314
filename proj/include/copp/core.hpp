#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace copp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a caller breaks an operation's precondition.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

class DatasetError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// Malformed input; row and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t row, std::size_t column, const std::string& what);

  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

/// 1-based position of the last element of an occurrence window.
using Position = std::uint32_t;

enum class ClassLabel { Positive, Negative };

/// Relative-order pattern: a permutation of the ranks 1..m, m >= 2.
class OpPattern {
 public:
  OpPattern() = default;

  /// Throws ContractViolation unless `ranks` is a permutation of 1..m with m >= 2.
  explicit OpPattern(std::vector<int> ranks);

  /// Skips validation; callers guarantee the permutation invariant.
  static OpPattern trusted(std::vector<int> ranks) noexcept;

  /// Parses "(1,3,2)"; the parentheses are optional.
  static OpPattern parse(std::string_view text);

  std::span<const int> ranks() const noexcept { return ranks_; }
  std::size_t size() const noexcept { return ranks_.size(); }
  int operator[](std::size_t i) const noexcept { return ranks_[i]; }
  int front() const noexcept { return ranks_.front(); }
  int back() const noexcept { return ranks_.back(); }

  /// "(1,3,2)"
  std::string to_string() const;

  friend bool operator==(const OpPattern&, const OpPattern&) = default;
  friend auto operator<=>(const OpPattern&, const OpPattern&) = default;

 private:
  std::vector<int> ranks_;
};

struct OpPatternHash {
  std::size_t operator()(const OpPattern& p) const noexcept;
};

/// Orders patterns by length, then lexicographically by rank vector.
bool shorter_then_lexicographic(const OpPattern& a, const OpPattern& b) noexcept;

struct TimeSeries {
  std::string id;
  std::vector<double> values;
  ClassLabel label = ClassLabel::Positive;
  /// Label token as it appeared in the input, echoed back on output.
  std::string label_token;
};

/// Two-class time series database. Construction validates that both classes
/// are populated, ids are unique and every series is non-empty and finite.
class BinaryDataset {
 public:
  BinaryDataset(std::vector<TimeSeries> positives, std::vector<TimeSeries> negatives);

  const std::vector<TimeSeries>& positives() const noexcept { return positives_; }
  const std::vector<TimeSeries>& negatives() const noexcept { return negatives_; }
  std::size_t size() const noexcept { return positives_.size() + negatives_.size(); }

  /// Positives followed by negatives.
  std::vector<const TimeSeries*> all() const;

  /// Same series with the class roles exchanged.
  BinaryDataset swapped() const;

 private:
  std::vector<TimeSeries> positives_;
  std::vector<TimeSeries> negatives_;
};

/// Rank of each value among `values` (1 = smallest). Absent when any two
/// values are equal. Requires at least two values.
std::optional<OpPattern> relative_order(std::span<const double> values);

/// Relative order of the length-m window of `series` ending at 1-based `end`.
std::optional<OpPattern> window_pattern(const TimeSeries& series, std::size_t end, std::size_t m);
std::optional<OpPattern> window_pattern(std::span<const double> values, std::size_t end,
                                        std::size_t m);

/// Number of windows of `values` whose relative order is `pattern`.
std::size_t count_occurrences(std::span<const double> values, const OpPattern& pattern);

}  // namespace copp
