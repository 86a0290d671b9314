#include "copp/features.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <random>

#include "copp/occurrence.hpp"

namespace copp {

FeatureMatrix featurize(const BinaryDataset& dataset, std::span<const OpPattern> patterns,
                        double minden, FeatureMode mode) {
  if (patterns.empty()) throw ConfigError("featurize needs at least one pattern");
  validate_minden(minden);
  FeatureMatrix matrix;
  for (const auto& p : patterns) matrix.columns.push_back(p.to_string());
  for (const auto* s : dataset.all()) {
    FeatureRow row{s->id, s->label, {}};
    row.values.reserve(patterns.size());
    for (const auto& p : patterns) {
      const std::size_t support = count_occurrences(s->values, p);
      if (mode == FeatureMode::Density) {
        row.values.push_back(static_cast<double>(support) / static_cast<double>(s->values.size()));
      } else {
        row.values.push_back(exceeds_density(support, s->values.size(), minden) ? 1.0 : 0.0);
      }
    }
    matrix.rows.push_back(std::move(row));
  }
  return matrix;
}

FeatureMatrix raw_value_matrix(const BinaryDataset& dataset) {
  FeatureMatrix matrix;
  const std::size_t width = dataset.positives().front().values.size();
  for (std::size_t i = 0; i < width; ++i) matrix.columns.push_back("t" + std::to_string(i + 1));
  for (const auto* s : dataset.all()) {
    if (s->values.size() != width) {
      throw EvaluationError("raw-value features need equal-length series; '" + s->id +
                            "' differs");
    }
    matrix.rows.push_back(FeatureRow{s->id, s->label, s->values});
  }
  return matrix;
}

void write_feature_csv(std::ostream& out, const FeatureMatrix& matrix) {
  out << "id,label";
  for (const auto& c : matrix.columns) out << ",\"" << c << '"';
  out << '\n';
  char buf[64];
  for (const auto& row : matrix.rows) {
    out << row.id << ',' << (row.label == ClassLabel::Positive ? "positive" : "negative");
    for (double v : row.values) {
      std::snprintf(buf, sizeof buf, "%.6f", v);
      out << ',' << buf;
    }
    out << '\n';
  }
}

namespace {

double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] - b[i]) * (a[i] - b[i]);
  return d;
}

}  // namespace

CrossValidation knn_cross_validate(const FeatureMatrix& matrix, std::size_t folds,
                                   std::size_t neighbors, std::uint64_t seed) {
  if (folds < 2) throw EvaluationError("cross-validation needs at least 2 folds");
  if (neighbors < 1) throw EvaluationError("need at least one neighbour");
  const std::size_t n = matrix.rows.size();
  for (const auto& row : matrix.rows) {
    if (row.values.size() != matrix.rows.front().values.size()) {
      throw EvaluationError("feature rows differ in width");
    }
  }

  std::vector<std::size_t> by_class[2];
  for (std::size_t i = 0; i < n; ++i) {
    by_class[matrix.rows[i].label == ClassLabel::Positive ? 0 : 1].push_back(i);
  }
  for (const auto& members : by_class) {
    if (members.size() < folds) {
      throw EvaluationError("a class has " + std::to_string(members.size()) +
                            " rows, fewer than " + std::to_string(folds) + " folds");
    }
  }

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> fold_of(n);
  for (auto& members : by_class) {
    std::shuffle(members.begin(), members.end(), rng);
    for (std::size_t i = 0; i < members.size(); ++i) fold_of[members[i]] = i % folds;
  }

  CrossValidation cv;
  std::vector<std::pair<double, std::size_t>> ranked;
  for (std::size_t f = 0; f < folds; ++f) {
    FoldResult fold;
    for (std::size_t t = 0; t < n; ++t) {
      if (fold_of[t] != f) continue;
      ranked.clear();
      for (std::size_t r = 0; r < n; ++r) {
        if (fold_of[r] == f) continue;
        ranked.emplace_back(squared_distance(matrix.rows[t].values, matrix.rows[r].values), r);
      }
      const std::size_t take = std::min(neighbors, ranked.size());
      std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(take),
                        ranked.end());
      std::size_t positive_votes = 0;
      for (std::size_t i = 0; i < take; ++i) {
        positive_votes += matrix.rows[ranked[i].second].label == ClassLabel::Positive;
      }
      const ClassLabel predicted =
          2 * positive_votes >= take ? ClassLabel::Positive : ClassLabel::Negative;
      ++fold.tested;
      fold.correct += predicted == matrix.rows[t].label;
    }
    fold.accuracy = static_cast<double>(fold.correct) / static_cast<double>(fold.tested);
    cv.folds.push_back(fold);
  }
  cv.accuracy = std::accumulate(cv.folds.begin(), cv.folds.end(), 0.0,
                                [](double acc, const FoldResult& f) { return acc + f.accuracy; }) /
                static_cast<double>(folds);
  return cv;
}

}  // namespace copp
