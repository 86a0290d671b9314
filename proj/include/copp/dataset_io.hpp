#pragma once

#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "copp/core.hpp"

namespace copp {

/// Row layouts accepted on ingestion.
///   Tsv: "label<TAB>v1<TAB>v2..." (UCR archive convention; any run of blanks
///        also separates fields). Series ids are the 1-based data row numbers.
///   Csv: comma-separated with a header row. The header must name a `label`
///        column and may name an `id` column; every other column holds values.
///        Trailing empty cells are allowed so series may differ in length.
///   Auto: Csv for a ".csv" extension, Tsv otherwise.
enum class InputFormat { Auto, Tsv, Csv };

struct LabeledRow {
  std::string id;
  std::string label;
  std::vector<double> values;
};

/// Reads labeled rows. Throws ParseError with the offending row and column on
/// malformed or non-finite numbers. Blank lines are skipped.
std::vector<LabeledRow> read_rows(std::istream& in, InputFormat format);

/// Splits rows into the two classes: labels in `positive_labels` become D+,
/// everything else D-. Throws DatasetError if either class ends up empty.
BinaryDataset parse_dataset(const std::vector<LabeledRow>& rows,
                            const std::set<std::string>& positive_labels);

BinaryDataset load_dataset(const std::filesystem::path& path,
                           const std::set<std::string>& positive_labels,
                           InputFormat format = InputFormat::Auto);

/// Writes the dataset back as Tsv rows, positives first. Values use the
/// shortest text that round-trips exactly.
void write_rows_tsv(std::ostream& out, const BinaryDataset& dataset);

/// Writes rows in their original order using `format` (Auto means Tsv). Csv
/// output carries an "id,label,v1..vN" header and pads short rows with empty
/// cells.
void write_rows(std::ostream& out, const std::vector<LabeledRow>& rows, InputFormat format);

/// Splits "a,b,c" into a label set; empty items are dropped.
std::set<std::string> parse_label_list(const std::string& text);

}  // namespace copp
