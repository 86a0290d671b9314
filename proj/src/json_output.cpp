#include "copp/json_output.hpp"

#include <cstdio>
#include <istream>
#include <ostream>

#include <json.hpp>

namespace copp {

std::string fixed6(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

const char* to_string(FusionMode mode) noexcept {
  switch (mode) {
    case FusionMode::Grouped: return "grouped";
    case FusionMode::AllPairs: return "all-pairs";
    case FusionMode::Enumerate: return "enum";
  }
  return "?";
}

const char* to_string(CandidateOrder order) noexcept {
  switch (order) {
    case CandidateOrder::SupportDescending: return "desc";
    case CandidateOrder::SupportAscending: return "asc";
    case CandidateOrder::Generation: return "none";
  }
  return "?";
}

namespace {

void write_entry(std::ostream& out, const TopKEntry& e) {
  out << "{\"pattern\":[";
  for (std::size_t i = 0; i < e.pattern.size(); ++i) out << (i ? "," : "") << e.pattern[i];
  out << "],\"direction\":\"" << to_string(e.direction) << "\",\"r_plus\":" << fixed6(e.r_plus)
      << ",\"r_minus\":" << fixed6(e.r_minus) << ",\"contrast\":" << fixed6(e.contrast) << '}';
}

}  // namespace

void write_topk_json(std::ostream& out, std::span<const TopKEntry> entries) {
  if (entries.empty()) {
    out << "[]\n";
    return;
  }
  out << "[\n";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    out << "  ";
    write_entry(out, entries[i]);
    out << (i + 1 < entries.size() ? ",\n" : "\n");
  }
  out << "]\n";
}

std::vector<OpPattern> read_topk_patterns(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("pattern file is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw ConfigError("pattern file must hold a JSON array");
  std::vector<OpPattern> patterns;
  for (const auto& item : doc) {
    if (!item.is_object() || !item.contains("pattern") || !item["pattern"].is_array()) {
      throw ConfigError("pattern file entries need a \"pattern\" array");
    }
    patterns.emplace_back(item["pattern"].get<std::vector<int>>());
  }
  return patterns;
}

void write_run_report_json(std::ostream& out, const MineResult& result, const MinerConfig& config) {
  out << "{\n  \"config\": {\"minden\":" << fixed6(config.minden) << ",\"k\":" << config.k
      << ",\"max_len\":" << (config.max_len ? std::to_string(*config.max_len) : "null")
      << ",\"epe\":" << (config.epe ? "true" : "false") << ",\"fusion\":\""
      << to_string(result.fusion_used) << "\",\"prune\":[";
  const char* sep = "";
  if (config.pruning.zero_rate) { out << sep << "\"s1\""; sep = ","; }
  if (config.pruning.forward_bound) { out << sep << "\"s2\""; sep = ","; }
  if (config.pruning.reverse_bound) { out << sep << "\"s3\""; }
  out << "],\"sort\":\"" << to_string(config.order) << "\"},\n";
  out << "  \"fusion_fell_back\": " << (result.fusion_fell_back ? "true" : "false") << ",\n";
  out << "  \"levels\": [\n";
  for (std::size_t i = 0; i < result.levels.size(); ++i) {
    const auto& l = result.levels[i];
    out << "    {\"direction\":\"" << to_string(l.direction) << "\",\"length\":" << l.length
        << ",\"group1_sources\":" << l.group1_sources << ",\"group2_sources\":" << l.group2_sources
        << ",\"fusion_checks\":" << l.fusion_checks << ",\"generated\":" << l.generated
        << ",\"enumeration_bound\":" << l.enumeration_bound << ",\"pruned_s1\":" << l.pruned_s1
        << ",\"pruned_s2\":" << l.pruned_s2 << ",\"pruned_s3\":" << l.pruned_s3
        << ",\"kept_group1\":" << l.kept_group1 << ",\"kept_group2\":" << l.kept_group2 << '}'
        << (i + 1 < result.levels.size() ? ",\n" : "\n");
  }
  out << "  ],\n";
  out << "  \"total_generated\": " << result.total_generated() << ",\n";
  out << "  \"total_pruned\": " << result.total_pruned() << ",\n";
  out << "  \"c_min_after_forward\": " << fixed6(result.c_min_after_forward) << ",\n";
  out << "  \"c_min\": " << fixed6(result.top.c_min()) << ",\n";
  out << "  \"peak_length\": " << result.peak_length << ",\n";
  out << "  \"elapsed_seconds\": " << fixed6(result.elapsed_seconds) << ",\n";
  out << "  \"top_k\": [";
  const auto entries = result.top.entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    out << (i ? ",\n    " : "\n    ");
    write_entry(out, entries[i]);
  }
  out << (entries.empty() ? "]\n" : "\n  ]\n") << "}\n";
}

void write_cross_validation_json(std::ostream& out, const CrossValidation& cv, std::size_t folds,
                                 std::size_t neighbors, std::uint64_t seed) {
  out << "{\"accuracy\":" << fixed6(cv.accuracy) << ",\"folds\":" << folds
      << ",\"neighbors\":" << neighbors << ",\"seed\":" << seed << ",\"fold_results\":[";
  for (std::size_t i = 0; i < cv.folds.size(); ++i) {
    const auto& f = cv.folds[i];
    out << (i ? "," : "") << "{\"fold\":" << i + 1 << ",\"tested\":" << f.tested
        << ",\"correct\":" << f.correct << ",\"accuracy\":" << fixed6(f.accuracy) << '}';
  }
  out << "]}\n";
}

}  // namespace copp
