#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "copp/core.hpp"

namespace copp {

enum class FeatureMode { Density, Count };

struct FeatureRow {
  std::string id;
  ClassLabel label = ClassLabel::Positive;
  std::vector<double> values;
};

/// One row per series (positives first), one column per feature.
struct FeatureMatrix {
  std::vector<std::string> columns;
  std::vector<FeatureRow> rows;
};

/// Density mode: den(p, t) per pattern. Count mode: C(p, t) in {0, 1}.
/// The dataset is used as given; apply shrink_dataset first to match mining.
/// Throws ConfigError for an empty pattern list.
FeatureMatrix featurize(const BinaryDataset& dataset, std::span<const OpPattern> patterns,
                        double minden, FeatureMode mode);

/// Raw observations as features, for a baseline. All series must share one
/// length (EvaluationError otherwise).
FeatureMatrix raw_value_matrix(const BinaryDataset& dataset);

/// Header "id,label,(1,3,2),..." then one row per series. The label column
/// holds "positive" or "negative"; values use six decimal places.
void write_feature_csv(std::ostream& out, const FeatureMatrix& matrix);

struct FoldResult {
  std::size_t tested = 0;
  std::size_t correct = 0;
  double accuracy = 0.0;
};

struct CrossValidation {
  double accuracy = 0.0;  ///< mean of the fold accuracies
  std::vector<FoldResult> folds;
};

/// Stratified k-fold cross-validation of a Euclidean nearest-neighbour
/// classifier. Fold assignment is shuffled per class from `seed`; distance
/// ties go to the lower row index and vote ties to the positive class.
/// Throws EvaluationError if folds < 2, neighbors < 1, or a class has fewer
/// rows than folds.
CrossValidation knn_cross_validate(const FeatureMatrix& matrix, std::size_t folds,
                                   std::size_t neighbors, std::uint64_t seed);

}  // namespace copp
