// copp: mine contrast order-preserving patterns from a two-class time series file.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "copp/dataset_io.hpp"
#include "copp/epe.hpp"
#include "copp/features.hpp"
#include "copp/json_output.hpp"
#include "copp/miner.hpp"
#include "copp/oracle.hpp"

namespace {

using namespace copp;

enum ExitCode { kOk = 0, kFailure = 1, kConfig = 2, kData = 3, kEvaluation = 4 };

struct Options {
  std::string input;
  std::string positive_labels;
  std::string format = "auto";
  std::string out;
  double minden = 0.01;
  std::size_t k = 10;
  std::size_t max_len = 0;
  bool no_epe = false;
  std::string fusion = "grouped";
  std::string prune = "s1,s2,s3";
  std::string sort = "desc";
  std::string report;
  std::string dump_occurrences;
  std::string patterns;
  std::string feature_mode = "density";
  std::size_t folds = 5;
  std::size_t neighbors = 10;
  std::uint64_t seed = 0;
  bool raw = false;
};

void setup_logging() {
  auto logger = spdlog::stderr_color_st("copp");
  logger->set_pattern("copp: %l: %v");
  logger->set_level(spdlog::level::warn);
  if (const char* level = std::getenv("COPP_LOG_LEVEL")) {
    logger->set_level(spdlog::level::from_str(level));
  }
  spdlog::set_default_logger(logger);
}

InputFormat input_format(const std::string& name) {
  if (name == "tsv") return InputFormat::Tsv;
  if (name == "csv") return InputFormat::Csv;
  return InputFormat::Auto;
}

InputFormat resolved_format(const Options& o) {
  const auto f = input_format(o.format);
  if (f != InputFormat::Auto) return f;
  return o.input.ends_with(".csv") ? InputFormat::Csv : InputFormat::Tsv;
}

BinaryDataset load(const Options& o) {
  const auto labels = parse_label_list(o.positive_labels);
  if (labels.empty()) throw ConfigError("--positive-labels names no label");
  auto d = load_dataset(o.input, labels, input_format(o.format));
  spdlog::info("loaded {} positive and {} negative series from {}", d.positives().size(),
               d.negatives().size(), o.input);
  return d;
}

PruningStrategies parse_prune(const std::string& text) {
  if (text == "none") return PruningStrategies::none();
  auto p = PruningStrategies::none();
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item == "s1") {
      p.zero_rate = true;
    } else if (item == "s2") {
      p.forward_bound = true;
    } else if (item == "s3") {
      p.reverse_bound = true;
    } else if (!item.empty()) {
      throw ConfigError("unknown pruning strategy '" + item + "' (expected s1, s2, s3 or none)");
    }
  }
  return p;
}

MinerConfig miner_config(const Options& o) {
  MinerConfig c;
  c.minden = o.minden;
  c.k = o.k;
  if (o.max_len) c.max_len = o.max_len;
  c.epe = !o.no_epe;
  c.fusion = o.fusion == "all-pairs" ? FusionMode::AllPairs
             : o.fusion == "enum"    ? FusionMode::Enumerate
                                     : FusionMode::Grouped;
  c.pruning = parse_prune(o.prune);
  c.order = o.sort == "asc"    ? CandidateOrder::SupportAscending
            : o.sort == "none" ? CandidateOrder::Generation
                               : CandidateOrder::SupportDescending;
  if ((!c.pruning.zero_rate || !c.pruning.reverse_bound) && !c.max_len) {
    throw ConfigError("--max-len is required when strategy s1 or s3 is disabled");
  }
  if (!c.epe && c.fusion == FusionMode::Grouped) {
    spdlog::warn("grouped fusion needs extreme point extraction; using all-pairs fusion");
  }
  return c;
}

void write_to(const std::string& path, const std::function<void(std::ostream&)>& body) {
  if (path.empty() || path == "-") {
    body(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  body(out);
  if (!out) throw Error("write to '" + path + "' failed");
}

MineResult run_mine(const Options& o, const BinaryDataset& d) {
  const auto config = miner_config(o);
  std::optional<std::ofstream> dump;
  MinerObserver observer;
  if (!o.dump_occurrences.empty()) {
    dump.emplace(o.dump_occurrences);
    if (!*dump) throw Error("cannot write '" + o.dump_occurrences + "'");
    std::string last_header;
    observer.on_level_state = [&, last_header](const LevelStateEvent& e) mutable {
      const std::string header = std::string("# ") + to_string(e.direction) + " length " +
                                 std::to_string(e.pattern.size());
      if (header != last_header) *dump << header << '\n';
      last_header = header;
      dump_occurrences(*dump, e.pattern, e.occurrences_d1);
    };
  }
  auto result = mine(d, config, dump ? &observer : nullptr);
  spdlog::info("generated {} candidates, pruned {}, {} patterns kept in {:.3f} s",
               result.total_generated(), result.total_pruned(), result.top.size(),
               result.elapsed_seconds);
  if (!o.report.empty()) {
    write_to(o.report, [&](std::ostream& out) { write_run_report_json(out, result, config); });
  }
  return result;
}

int cmd_transform(const Options& o) {
  const auto format = resolved_format(o);
  std::ifstream in(o.input);
  if (!in) throw DatasetError("cannot open '" + o.input + "'");
  auto rows = read_rows(in, format);
  std::size_t before = 0;
  std::size_t after = 0;
  for (auto& row : rows) {
    before += row.values.size();
    row.values = extract_extremes(std::span<const double>(row.values));
    after += row.values.size();
  }
  spdlog::info("{} values shrunk to {}", before, after);
  write_to(o.out, [&](std::ostream& out) { write_rows(out, rows, format); });
  return kOk;
}

int cmd_mine(const Options& o) {
  const auto d = load(o);
  const auto result = run_mine(o, d);
  write_to(o.out, [&](std::ostream& out) { write_topk_json(out, result.top.entries()); });
  return kOk;
}

int cmd_oracle(const Options& o) {
  if (o.max_len < 2) throw ConfigError("--max-len must be at least 2");
  validate_minden(o.minden);
  if (o.k == 0) throw ConfigError("k must be at least 1");
  const auto d = load(o);
  const auto report = enumerate_supports(o.no_epe ? d : shrink_dataset(d), o.minden, o.max_len);
  const auto top = oracle_topk(report, o.k);
  write_to(o.out, [&](std::ostream& out) { write_topk_json(out, top); });
  return kOk;
}

FeatureMatrix build_features(const Options& o, const BinaryDataset& d) {
  std::vector<OpPattern> patterns;
  if (!o.patterns.empty()) {
    std::ifstream in(o.patterns);
    if (!in) throw ConfigError("cannot open pattern file '" + o.patterns + "'");
    patterns = read_topk_patterns(in);
  } else {
    const auto result = run_mine(o, d);
    for (const auto& e : result.top.entries()) patterns.push_back(e.pattern);
  }
  if (patterns.empty()) throw ConfigError("no patterns to build features from");
  const auto mode = o.feature_mode == "count" ? FeatureMode::Count : FeatureMode::Density;
  return featurize(o.no_epe ? d : shrink_dataset(d), patterns, o.minden, mode);
}

int cmd_features(const Options& o) {
  const auto d = load(o);
  const auto matrix = build_features(o, d);
  write_to(o.out, [&](std::ostream& out) { write_feature_csv(out, matrix); });
  return kOk;
}

int cmd_evaluate(const Options& o) {
  const auto d = load(o);
  const auto matrix = o.raw ? raw_value_matrix(d) : build_features(o, d);
  const auto cv = knn_cross_validate(matrix, o.folds, o.neighbors, o.seed);
  std::cout << "accuracy " << fixed6(cv.accuracy) << '\n';
  if (!o.out.empty()) {
    write_to(o.out, [&](std::ostream& out) {
      write_cross_validation_json(out, cv, o.folds, o.neighbors, o.seed);
    });
  }
  return kOk;
}

void add_input(CLI::App* cmd, Options& o, bool labels_required) {
  cmd->add_option("--input,-i", o.input, "Dataset file (TSV or CSV)")->required();
  auto* labels = cmd->add_option("--positive-labels", o.positive_labels,
                                 "Comma-separated labels of the positive class");
  if (labels_required) labels->required();
  cmd->add_option("--format", o.format, "Input format")
      ->check(CLI::IsMember({"auto", "tsv", "csv"}))
      ->capture_default_str();
  cmd->add_option("--out,-o", o.out, "Output file (default: standard output)");
}

void add_mining(CLI::App* cmd, Options& o) {
  cmd->add_option("--minden", o.minden, "Minimum density threshold")->capture_default_str();
  cmd->add_option("--k", o.k, "Number of patterns to keep")->capture_default_str();
  cmd->add_option("--max-len", o.max_len, "Longest pattern length to generate");
  cmd->add_flag("--no-epe", o.no_epe, "Mine the original series without extreme point extraction");
  cmd->add_option("--fusion", o.fusion, "Candidate generation")
      ->check(CLI::IsMember({"grouped", "all-pairs", "enum"}))
      ->capture_default_str();
  cmd->add_option("--prune", o.prune, "Pruning strategies: any of s1,s2,s3 or none")
      ->capture_default_str();
  cmd->add_option("--sort", o.sort, "Candidate order within a level by support")
      ->check(CLI::IsMember({"desc", "asc", "none"}))
      ->capture_default_str();
  cmd->add_option("--report", o.report, "Write per-level run counters as JSON");
}

void add_features(CLI::App* cmd, Options& o) {
  cmd->add_option("--patterns", o.patterns, "Pattern JSON from `copp mine` (mines inline if absent)");
  cmd->add_option("--feature-mode", o.feature_mode, "Feature encoding")
      ->check(CLI::IsMember({"density", "count"}))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  Options o;
  CLI::App app{"Top-k contrast order-preserving pattern mining for two-class time series"};
  app.require_subcommand(1);

  auto* transform = app.add_subcommand("transform", "Print the series after extreme point extraction");
  add_input(transform, o, false);

  auto* mine_cmd = app.add_subcommand("mine", "Mine the top-k contrast patterns");
  add_input(mine_cmd, o, true);
  add_mining(mine_cmd, o);
  mine_cmd->add_option("--dump-occurrences", o.dump_occurrences,
                       "Write occurrence lists and available sets per level");

  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive sliding-window top-k for checking");
  add_input(oracle_cmd, o, true);
  oracle_cmd->add_option("--minden", o.minden, "Minimum density threshold")->capture_default_str();
  oracle_cmd->add_option("--k", o.k, "Number of patterns to keep")->capture_default_str();
  oracle_cmd->add_option("--max-len", o.max_len, "Longest pattern length")->required();
  oracle_cmd->add_flag("--no-epe", o.no_epe, "Use the original series");

  auto* features = app.add_subcommand("features", "Write the pattern feature matrix as CSV");
  add_input(features, o, true);
  add_mining(features, o);
  add_features(features, o);

  auto* evaluate = app.add_subcommand("evaluate", "Cross-validate a nearest-neighbour classifier");
  add_input(evaluate, o, true);
  add_mining(evaluate, o);
  add_features(evaluate, o);
  evaluate->add_option("--folds", o.folds, "Cross-validation folds")->capture_default_str();
  evaluate->add_option("--neighbors", o.neighbors, "Neighbours per vote")->capture_default_str();
  evaluate->add_option("--seed", o.seed, "Fold assignment seed")->capture_default_str();
  evaluate->add_flag("--raw", o.raw, "Use raw series values as features (baseline)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfig;
  }

  try {
    if (*transform) return cmd_transform(o);
    if (*mine_cmd) return cmd_mine(o);
    if (*oracle_cmd) return cmd_oracle(o);
    if (*features) return cmd_features(o);
    if (*evaluate) return cmd_evaluate(o);
  } catch (const ConfigError& e) {
    spdlog::error("{}", e.what());
    return kConfig;
  } catch (const ContractViolation& e) {
    spdlog::error("{}", e.what());
    return kConfig;
  } catch (const ParseError& e) {
    spdlog::error("{}", e.what());
    return kData;
  } catch (const DatasetError& e) {
    spdlog::error("{}", e.what());
    return kData;
  } catch (const EvaluationError& e) {
    spdlog::error("{}", e.what());
    return kEvaluation;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kFailure;
  }
  return kFailure;
}
