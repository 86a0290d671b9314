#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <set>
#include <sstream>

#include "copp/dataset_io.hpp"
#include "copp/epe.hpp"
#include "copp/features.hpp"
#include "copp/json_output.hpp"
#include "copp/miner.hpp"
#include "copp/oracle.hpp"

namespace py = pybind11;
using namespace copp;

namespace {

OpPattern to_pattern(const std::vector<int>& ranks) { return OpPattern(ranks); }

py::tuple to_tuple(const OpPattern& p) {
  py::tuple t(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) t[i] = p[i];
  return t;
}

std::vector<TimeSeries> make_series(const std::vector<std::vector<double>>& values, ClassLabel label,
                                    std::size_t first_id) {
  std::vector<TimeSeries> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out.push_back({std::to_string(first_id + i), values[i], label,
                   label == ClassLabel::Positive ? "positive" : "negative"});
  }
  return out;
}

py::dict entry_dict(const TopKEntry& e) {
  py::dict d;
  d["pattern"] = to_tuple(e.pattern);
  d["direction"] = to_string(e.direction);
  d["r_plus"] = e.r_plus;
  d["r_minus"] = e.r_minus;
  d["contrast"] = e.contrast;
  return d;
}

py::list entries_list(std::span<const TopKEntry> entries) {
  py::list out;
  for (const auto& e : entries) out.append(entry_dict(e));
  return out;
}

PruningStrategies parse_prune(const std::vector<std::string>& names) {
  auto p = PruningStrategies::none();
  for (const auto& n : names) {
    if (n == "s1") p.zero_rate = true;
    else if (n == "s2") p.forward_bound = true;
    else if (n == "s3") p.reverse_bound = true;
    else if (n != "none") throw ConfigError("unknown pruning strategy '" + n + "'");
  }
  return p;
}

MinerConfig make_config(double minden, std::size_t k, std::optional<std::size_t> max_len, bool epe,
                        const std::string& fusion, const std::vector<std::string>& prune,
                        const std::string& sort) {
  MinerConfig c;
  c.minden = minden;
  c.k = k;
  c.max_len = max_len;
  c.epe = epe;
  if (fusion == "grouped") c.fusion = FusionMode::Grouped;
  else if (fusion == "all-pairs") c.fusion = FusionMode::AllPairs;
  else if (fusion == "enum") c.fusion = FusionMode::Enumerate;
  else throw ConfigError("unknown fusion mode '" + fusion + "'");
  if (sort == "desc") c.order = CandidateOrder::SupportDescending;
  else if (sort == "asc") c.order = CandidateOrder::SupportAscending;
  else if (sort == "none") c.order = CandidateOrder::Generation;
  else throw ConfigError("unknown sort order '" + sort + "'");
  c.pruning = parse_prune(prune);
  if ((!c.pruning.zero_rate || !c.pruning.reverse_bound) && !c.max_len) {
    throw ConfigError("max_len is required when strategy s1 or s3 is disabled");
  }
  return c;
}

py::dict level_dict(const LevelReport& l) {
  py::dict d;
  d["direction"] = to_string(l.direction);
  d["length"] = l.length;
  d["group1_sources"] = l.group1_sources;
  d["group2_sources"] = l.group2_sources;
  d["fusion_checks"] = l.fusion_checks;
  d["generated"] = l.generated;
  d["pruned_s1"] = l.pruned_s1;
  d["pruned_s2"] = l.pruned_s2;
  d["pruned_s3"] = l.pruned_s3;
  d["kept_group1"] = l.kept_group1;
  d["kept_group2"] = l.kept_group2;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Top-k contrast order-preserving pattern mining";

  auto base = py::register_exception<Error>(m, "CoppError");
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<DatasetError>(m, "DatasetError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<EvaluationError>(m, "EvaluationError", base.ptr());
  py::register_exception<ContractViolation>(m, "ContractViolation", base.ptr());

  py::class_<BinaryDataset>(m, "Dataset")
      .def(py::init([](const std::vector<std::vector<double>>& positives,
                       const std::vector<std::vector<double>>& negatives) {
             return BinaryDataset(make_series(positives, ClassLabel::Positive, 1),
                                  make_series(negatives, ClassLabel::Negative, positives.size() + 1));
           }),
           py::arg("positives"), py::arg("negatives"))
      .def_static(
          "load",
          [](const std::string& path, const std::vector<std::string>& positive_labels,
             const std::string& format) {
            const auto f = format == "csv" ? InputFormat::Csv
                           : format == "tsv" ? InputFormat::Tsv
                                             : InputFormat::Auto;
            return load_dataset(path, {positive_labels.begin(), positive_labels.end()}, f);
          },
          py::arg("path"), py::arg("positive_labels"), py::arg("format") = "auto")
      .def_property_readonly("positives",
                             [](const BinaryDataset& d) {
                               std::vector<std::vector<double>> v;
                               for (const auto& s : d.positives()) v.push_back(s.values);
                               return v;
                             })
      .def_property_readonly("negatives",
                             [](const BinaryDataset& d) {
                               std::vector<std::vector<double>> v;
                               for (const auto& s : d.negatives()) v.push_back(s.values);
                               return v;
                             })
      .def("shrink", &shrink_dataset, "Copy with extreme point extraction applied")
      .def("__len__", &BinaryDataset::size);

  m.def(
      "relative_order",
      [](const std::vector<double>& values) -> std::optional<py::tuple> {
        auto p = relative_order(values);
        if (!p) return std::nullopt;
        return to_tuple(*p);
      },
      py::arg("values"), "Rank permutation of a window, or None if it contains a tie.");

  m.def(
      "extract_extremes",
      [](const std::vector<double>& values) {
        return extract_extremes(std::span<const double>(values));
      },
      py::arg("values"));

  m.def(
      "fuse",
      [](const std::vector<int>& p, const std::vector<int>& q) -> std::optional<py::list> {
        auto r = fuse(to_pattern(p), to_pattern(q));
        if (!r) return std::nullopt;
        py::list out;
        out.append(to_tuple(r->first));
        if (r->second) out.append(to_tuple(*r->second));
        return out;
      },
      py::arg("p"), py::arg("q"), "Super-patterns of p and q (one or two), or None.");

  m.def(
      "count_occurrences",
      [](const std::vector<double>& values, const std::vector<int>& pattern) {
        return count_occurrences(values, to_pattern(pattern));
      },
      py::arg("values"), py::arg("pattern"));

  m.def(
      "mine",
      [](const BinaryDataset& d, double minden, std::size_t k, std::optional<std::size_t> max_len,
         bool epe, const std::string& fusion, const std::vector<std::string>& prune,
         const std::string& sort) {
        const auto config = make_config(minden, k, max_len, epe, fusion, prune, sort);
        MineResult result;
        {
          py::gil_scoped_release release;
          result = mine(d, config);
        }
        py::dict out;
        out["patterns"] = entries_list(result.top.entries());
        py::list levels;
        for (const auto& l : result.levels) levels.append(level_dict(l));
        out["levels"] = levels;
        out["c_min"] = result.top.c_min();
        out["c_min_after_forward"] = result.c_min_after_forward;
        out["fusion_used"] = to_string(result.fusion_used);
        out["fusion_fell_back"] = result.fusion_fell_back;
        out["total_generated"] = result.total_generated();
        out["total_pruned"] = result.total_pruned();
        out["peak_length"] = result.peak_length;
        out["elapsed_seconds"] = result.elapsed_seconds;
        return out;
      },
      py::arg("dataset"), py::arg("minden") = 0.01, py::arg("k") = 10,
      py::arg("max_len") = py::none(), py::arg("epe") = true, py::arg("fusion") = "grouped",
      py::arg("prune") = std::vector<std::string>{"s1", "s2", "s3"}, py::arg("sort") = "desc",
      "Mine the k highest-contrast patterns; returns patterns plus run counters.");

  m.def(
      "oracle_topk",
      [](const BinaryDataset& d, double minden, std::size_t max_len, std::size_t k, bool epe) {
        if (k == 0) throw ConfigError("k must be at least 1");
        const auto report = enumerate_supports(epe ? shrink_dataset(d) : d, minden, max_len);
        return entries_list(oracle_topk(report, k));
      },
      py::arg("dataset"), py::arg("minden"), py::arg("max_len"), py::arg("k"),
      py::arg("epe") = true, "Exhaustive top-k by scanning every window.");

  m.def(
      "featurize",
      [](const BinaryDataset& d, const std::vector<std::vector<int>>& patterns, double minden,
         const std::string& mode, bool epe) {
        std::vector<OpPattern> ps;
        for (const auto& p : patterns) ps.push_back(to_pattern(p));
        const auto fm = mode == "count" ? FeatureMode::Count : FeatureMode::Density;
        const auto matrix = featurize(epe ? shrink_dataset(d) : d, ps, minden, fm);
        py::dict out;
        out["columns"] = matrix.columns;
        py::list ids, labels, values;
        for (const auto& r : matrix.rows) {
          ids.append(r.id);
          labels.append(r.label == ClassLabel::Positive ? 1 : 0);
          values.append(r.values);
        }
        out["ids"] = ids;
        out["labels"] = labels;
        out["values"] = values;
        return out;
      },
      py::arg("dataset"), py::arg("patterns"), py::arg("minden") = 0.01,
      py::arg("mode") = "density", py::arg("epe") = true,
      "Feature matrix: one row per series, positives first; labels are 1/0.");

  m.def(
      "knn_cross_validate",
      [](const std::vector<std::vector<double>>& values, const std::vector<int>& labels,
         std::size_t folds, std::size_t neighbors, std::uint64_t seed) {
        if (values.size() != labels.size()) throw EvaluationError("values and labels differ in length");
        FeatureMatrix matrix;
        for (std::size_t i = 0; i < values.size(); ++i) {
          matrix.rows.push_back({std::to_string(i + 1),
                                 labels[i] ? ClassLabel::Positive : ClassLabel::Negative,
                                 values[i]});
        }
        const auto cv = knn_cross_validate(matrix, folds, neighbors, seed);
        py::dict out;
        out["accuracy"] = cv.accuracy;
        py::list per;
        for (const auto& f : cv.folds) {
          py::dict fd;
          fd["tested"] = f.tested;
          fd["correct"] = f.correct;
          fd["accuracy"] = f.accuracy;
          per.append(fd);
        }
        out["folds"] = per;
        return out;
      },
      py::arg("values"), py::arg("labels"), py::arg("folds") = 5, py::arg("neighbors") = 10,
      py::arg("seed") = 0, "Stratified k-fold nearest-neighbour accuracy; labels are 1/0.");
}
