#include "copp/dataset_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

namespace copp {

namespace {

double parse_value(std::string_view token, std::size_t row, std::size_t column) {
  // from_chars rejects a leading '+', which some exporters emit
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty()) {
    throw ParseError(row, column, "cannot parse '" + std::string(token) + "' as a number");
  }
  if (!std::isfinite(value)) {
    throw ParseError(row, column, "non-finite value '" + std::string(token) + "'");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  constexpr std::string_view blanks = " \t\r\n";
  auto first = s.find_first_not_of(blanks);
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(blanks);
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_blanks(std::string_view line) {
  std::vector<std::string_view> out;
  constexpr std::string_view blanks = " \t\r";
  std::size_t i = 0;
  while (i < line.size()) {
    i = line.find_first_not_of(blanks, i);
    if (i == std::string_view::npos) break;
    auto j = line.find_first_of(blanks, i);
    if (j == std::string_view::npos) j = line.size();
    out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<LabeledRow> read_tsv(std::istream& in) {
  std::vector<LabeledRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto fields = split_blanks(line);
    if (fields.empty()) continue;
    if (fields.size() < 2) throw ParseError(line_no, 2, "row has a label but no values");
    LabeledRow row;
    row.id = std::to_string(rows.size() + 1);
    row.label = std::string(fields[0]);
    row.values.reserve(fields.size() - 1);
    for (std::size_t c = 1; c < fields.size(); ++c) {
      row.values.push_back(parse_value(fields[c], line_no, c + 1));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<LabeledRow> read_csv(std::istream& in) {
  std::vector<LabeledRow> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t label_col = std::string::npos;
  std::size_t id_col = std::string::npos;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto cells = split_commas(line);
    if (width == 0) {
      width = cells.size();
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (cells[c] == "label") label_col = c;
        if (cells[c] == "id") id_col = c;
      }
      if (label_col == std::string::npos) throw ParseError(line_no, 1, "header has no 'label' column");
      continue;
    }
    if (cells.size() > width) throw ParseError(line_no, width + 1, "more cells than header columns");
    LabeledRow row;
    row.id = std::to_string(rows.size() + 1);
    bool trailing = false;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c == label_col) {
        row.label = std::string(cells[c]);
      } else if (c == id_col) {
        row.id = std::string(cells[c]);
      } else if (cells[c].empty()) {
        trailing = true;
      } else {
        if (trailing) throw ParseError(line_no, c + 1, "value after an empty cell");
        row.values.push_back(parse_value(cells[c], line_no, c + 1));
      }
    }
    if (row.label.empty()) throw ParseError(line_no, label_col + 1, "missing label");
    if (row.values.empty()) throw ParseError(line_no, 1, "row has no values");
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::vector<LabeledRow> read_rows(std::istream& in, InputFormat format) {
  if (format == InputFormat::Csv) return read_csv(in);
  return read_tsv(in);
}

BinaryDataset parse_dataset(const std::vector<LabeledRow>& rows,
                            const std::set<std::string>& positive_labels) {
  std::vector<TimeSeries> positives;
  std::vector<TimeSeries> negatives;
  for (const auto& row : rows) {
    TimeSeries s{row.id, row.values, ClassLabel::Negative, row.label};
    if (positive_labels.count(row.label)) {
      positives.push_back(std::move(s));
    } else {
      negatives.push_back(std::move(s));
    }
  }
  return BinaryDataset(std::move(positives), std::move(negatives));
}

BinaryDataset load_dataset(const std::filesystem::path& path,
                           const std::set<std::string>& positive_labels, InputFormat format) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot open '" + path.string() + "'");
  if (format == InputFormat::Auto) {
    format = path.extension() == ".csv" ? InputFormat::Csv : InputFormat::Tsv;
  }
  return parse_dataset(read_rows(in, format), positive_labels);
}

namespace {

std::string_view shortest(double v, std::array<char, 64>& buf) {
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return {buf.data(), static_cast<std::size_t>(ptr - buf.data())};
}

}  // namespace

void write_rows_tsv(std::ostream& out, const BinaryDataset& dataset) {
  std::array<char, 64> buf{};
  for (const auto* s : dataset.all()) {
    out << s->label_token;
    for (double v : s->values) out << '\t' << shortest(v, buf);
    out << '\n';
  }
}

void write_rows(std::ostream& out, const std::vector<LabeledRow>& rows, InputFormat format) {
  std::array<char, 64> buf{};
  if (format != InputFormat::Csv) {
    for (const auto& row : rows) {
      out << row.label;
      for (double v : row.values) out << '\t' << shortest(v, buf);
      out << '\n';
    }
    return;
  }
  std::size_t width = 0;
  for (const auto& row : rows) width = std::max(width, row.values.size());
  out << "id,label";
  for (std::size_t i = 0; i < width; ++i) out << ",v" << i + 1;
  out << '\n';
  for (const auto& row : rows) {
    out << row.id << ',' << row.label;
    for (double v : row.values) out << ',' << shortest(v, buf);
    for (std::size_t i = row.values.size(); i < width; ++i) out << ',';
    out << '\n';
  }
}

std::set<std::string> parse_label_list(const std::string& text) {
  std::set<std::string> labels;
  for (auto item : split_commas(text)) {
    if (!item.empty()) labels.emplace(item);
  }
  return labels;
}

}  // namespace copp
