// Acceptance checks, one PASS/FAIL line per criterion.
//   copp_acceptance            run all criteria
//   copp_acceptance N [N...]   run only the listed criteria
// Exit status is nonzero when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "copp/epe.hpp"
#include "copp/features.hpp"
#include "copp/miner.hpp"
#include "copp/oracle.hpp"
#include "support/fixtures.hpp"

namespace {

using namespace copp;
using testing::sample;

// Tolerances.
constexpr double kRateTol = 0.001;     // printed two/three-decimal rates
constexpr double kDensityTol = 0.005;  // two-decimal densities
constexpr double kExact = 1e-12;       // contrasts compared between runs
constexpr double kEndToEndSeconds = 1.0;
constexpr double kOracleSeconds = 60.0;
constexpr double kSyntheticAccuracy = 0.95;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

std::string fmt(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string describe(std::span<const TopKEntry> q) {
  std::string s = "{";
  for (std::size_t i = 0; i < q.size(); ++i) {
    s += (i ? ", " : "") + q[i].pattern.to_string() + ":" + fmt(q[i].contrast);
  }
  return s + "}";
}

std::vector<double> contrasts_of(std::span<const TopKEntry> q) {
  std::vector<double> c;
  for (const auto& e : q) c.push_back(e.contrast);
  std::sort(c.rbegin(), c.rend());
  return c;
}

bool same_contrasts(std::span<const TopKEntry> a, std::span<const TopKEntry> b) {
  const auto x = contrasts_of(a);
  const auto y = contrasts_of(b);
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(x[i] - y[i]) > kExact) return false;
  }
  return true;
}

bool identical(std::span<const TopKEntry> a, std::span<const TopKEntry> b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].pattern != b[i].pattern || a[i].direction != b[i].direction ||
        std::abs(a[i].contrast - b[i].contrast) > kExact) {
      return false;
    }
  }
  return true;
}

std::set<OpPattern> above(std::span<const TopKEntry> q, double c_min) {
  std::set<OpPattern> s;
  for (const auto& e : q) {
    if (e.contrast > c_min + kExact) s.insert(e.pattern);
  }
  return s;
}

std::vector<std::size_t> supports(const BinaryDataset& d, const OpPattern& p) {
  std::vector<std::size_t> s;
  for (const auto* t : d.all()) s.push_back(count_occurrences(t->values, p));
  return s;
}

std::vector<Position> occurrence_list(const std::vector<double>& t, const OpPattern& p) {
  return testing::naive_positions(t, {p.ranks().begin(), p.ranks().end()});
}

std::size_t examined(const MineResult& r) {
  std::size_t n = 0;
  for (const auto& l : r.levels) n += l.fusion_checks + l.generated;
  return n;
}

// 1 ----------------------------------------------------------------------
Outcome relative_order_example() {
  Outcome o;
  const std::vector<double> w{4, 2, 6, 5};
  const auto got = relative_order(w);
  o.require(got && *got == OpPattern({2, 1, 4, 3}),
            "got " + (got ? got->to_string() : std::string("none")));
  if (o.pass) o.detail = "(4,2,6,5) -> " + got->to_string();
  return o;
}

// 2 ----------------------------------------------------------------------
Outcome support_density_contrast() {
  Outcome o;
  const auto d = sample();
  const auto a = support_rate(supports(d, OpPattern({1, 3, 2})), d, 0.1);
  o.require(a.support == std::vector<std::size_t>{2, 1, 2, 0, 0, 0}, "sup (1,3,2) mismatch");
  const double den[] = {0.33, 0.17, 0.33, 0, 0, 0};
  for (std::size_t i = 0; i < 6; ++i) {
    o.require(std::abs(a.density[i] - den[i]) <= kDensityTol, "density t" + std::to_string(i + 1));
  }
  o.require(a.r_plus() == 1.0 && a.r_minus() == 0.0, "r+/r- of (1,3,2)");
  o.require(contrast(a, Direction::Forward) == 1.0, "contrast of (1,3,2)");
  const auto b = support_rate(supports(d, OpPattern({2, 3, 1})), d, 0.1);
  o.require(b.r_plus() == 0.0, "r+ of (2,3,1)");
  o.require(std::abs(b.r_minus() - 0.667) <= kRateTol, "r- of (2,3,1) = " + fmt(b.r_minus()));
  if (o.pass) o.detail = "sup (2,1,2,0,0,0), c=1; (2,3,1) r-=" + fmt(b.r_minus());
  return o;
}

// 3 ----------------------------------------------------------------------
Outcome extreme_points_example() {
  Outcome o;
  const std::vector<double> t6{9, 7, 6, 5, 7, 8};
  const auto got = extract_extremes(std::span<const double>(t6));
  o.require(got == std::vector<double>{9, 5, 8}, "unexpected shrunk series");
  if (o.pass) o.detail = "(9,7,6,5,7,8) -> (9,5,8)";
  return o;
}

// 4 ----------------------------------------------------------------------
Outcome fusion_examples() {
  Outcome o;
  const auto s = fuse(OpPattern({2, 1, 3}), OpPattern({1, 3, 2}));
  o.require(s && s->first == OpPattern({2, 1, 4, 3}) && s->second == OpPattern({3, 1, 4, 2}),
            "special fusion");
  const auto g = fuse(OpPattern({1, 3, 2}), OpPattern({2, 1, 3}));
  o.require(g && g->first == OpPattern({1, 3, 2, 4}) && !g->second, "general fusion");
  if (o.pass) o.detail = "{(2,1,4,3),(3,1,4,2)} and {(1,3,2,4)}";
  return o;
}

// 5 ----------------------------------------------------------------------
Outcome src_examples() {
  Outcome o;
  const std::vector<double> t1{4, 2, 6, 5, 9, 8};
  auto p = Occurrences::from_positions(occurrence_list(t1, OpPattern({2, 1, 3})));
  auto q = Occurrences::from_positions(occurrence_list(t1, OpPattern({1, 3, 2})));
  const auto out = src_fuse(p, q, *fuse(OpPattern({2, 1, 3}), OpPattern({1, 3, 2})), t1, 3);
  o.require(out.first == std::vector<Position>{4, 6}, "L of (2,1,4,3)");
  o.require(out.second.empty(), "L of (3,1,4,2) not empty");
  o.require(p.prefix_avail.empty() && q.suffix_avail.empty(), "available sets not emptied");
  auto r = Occurrences::from_positions(occurrence_list(t1, OpPattern({2, 3, 1})));
  const auto next = src_fuse(p, r, *fuse(OpPattern({2, 1, 3}), OpPattern({2, 3, 1})), t1, 3);
  o.require(next.first.empty() && next.join_steps == 0,
            "follow-up fusion took " + std::to_string(next.join_steps) + " steps");
  if (o.pass) o.detail = "L={4,6}, L'={}, P/S emptied, follow-up: 0 join steps";
  return o;
}

// 6 ----------------------------------------------------------------------
Outcome end_to_end_sample() {
  Outcome o;
  MinerConfig c;
  c.minden = 0.1;
  c.k = 3;
  const auto started = Clock::now();
  const auto result = mine(sample(), c);
  const double elapsed = seconds_since(started);
  const auto q = result.top.entries();
  const std::set<OpPattern> expected{OpPattern({1, 3, 2}), OpPattern({1, 3, 2, 4}),
                                     OpPattern({2, 1, 4, 3})};
  std::set<OpPattern> got;
  for (const auto& e : q) got.insert(e.pattern);
  o.require(got == expected, "patterns " + describe(q) +
                                 ", expected {(1,3,2),(1,3,2,4),(2,1,4,3)}");
  const auto c_got = contrasts_of(q);
  o.require(c_got.size() == 3 && std::abs(c_got[0] - 1.0) <= kRateTol &&
                std::abs(c_got[1] - 1.0) <= kRateTol && std::abs(c_got[2] - 0.667) <= kRateTol,
            "contrasts");
  o.require(std::all_of(q.begin(), q.end(),
                        [](const TopKEntry& e) { return e.direction == Direction::Forward; }),
            "direction");
  o.require(elapsed < kEndToEndSeconds, "took " + fmt(elapsed) + " s");
  if (o.pass) o.detail = describe(q) + " in " + fmt(elapsed, 4) + " s";
  return o;
}

// 7 ----------------------------------------------------------------------
Outcome oracle_equivalence() {
  Outcome o;
  std::mt19937_64 rng(20240607);
  const double mindens[] = {0.0, 0.01, 0.1};
  const std::size_t ks[] = {1, 3, 5, 10};
  constexpr int kDatasets = 240;
  int failures = 0;
  const auto started = Clock::now();
  for (int trial = 0; trial < kDatasets; ++trial) {
    const auto d = testing::random_dataset(rng, 4, 10, 8, 40);
    MinerConfig c;
    c.minden = mindens[trial % 3];
    c.k = ks[(trial / 3) % 4];
    c.max_len = 6;
    const auto result = mine(d, c);
    const auto top = oracle_topk(enumerate_supports(shrink_dataset(d), c.minden, 6), c.k);
    const auto q = result.top.entries();
    const double c_min = result.top.c_min();
    if (!same_contrasts(q, top) || above(q, c_min) != above(top, c_min)) {
      if (++failures == 1) o.require(false, "trial " + std::to_string(trial) + ": miner " +
                                                describe(q) + " vs oracle " + describe(top));
    }
  }
  const double elapsed = seconds_since(started);
  o.require(failures == 0, std::to_string(failures) + " of " + std::to_string(kDatasets) +
                               " datasets disagree");
  o.require(elapsed < kOracleSeconds, "took " + fmt(elapsed) + " s");
  if (o.pass) {
    o.detail = std::to_string(kDatasets) + " datasets agree in " + fmt(elapsed, 2) + " s";
  }
  return o;
}

// 8 ----------------------------------------------------------------------
Outcome pruning_soundness() {
  Outcome o;
  std::mt19937_64 rng(77);
  constexpr std::size_t kMaxLen = 5;
  int mismatches = 0;
  int effective = 0;
  int not_fewer = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto d = testing::random_dataset(rng, 4, 10, 8, 40);
    MinerConfig c;
    c.minden = trial % 2 ? 0.01 : 0.1;
    c.k = 1 + trial % 10;
    c.max_len = kMaxLen;
    double c_min = 0.0;
    bool cuts_subtree = false;
    MinerObserver obs;
    obs.on_offer = [&](const OfferEvent& e) { c_min = e.c_min_after; };
    obs.on_fusion = [&](const FusionEvent& e) {
      // A candidate pruned at the length cap has no descendants to save.
      if (e.decision != PruneDecision::Keep && c_min > 0.0 && e.produced.size() < kMaxLen) {
        cuts_subtree = true;
      }
    };
    const auto full = mine(d, c, &obs);
    auto none = c;
    none.pruning = PruningStrategies::none();
    const auto unpruned = mine(d, none);
    if (!identical(full.top.entries(), unpruned.top.entries())) ++mismatches;
    if (cuts_subtree) {
      ++effective;
      if (!(examined(full) < examined(unpruned))) ++not_fewer;
    }
  }
  o.require(mismatches == 0, std::to_string(mismatches) + " of 50 results differ");
  o.require(not_fewer == 0, std::to_string(not_fewer) + " pruned runs were not cheaper");
  if (o.pass) {
    o.detail = "50 identical results; pruning below the cap cut work in " +
               std::to_string(effective) + " runs";
  }
  return o;
}

// 9 ----------------------------------------------------------------------
Outcome fusion_dominance() {
  Outcome o;
  std::mt19937_64 rng(99);
  int mismatches = 0;
  int larger = 0;
  int strictly_smaller = 0;
  std::size_t grouped_total = 0;
  std::size_t all_pairs_total = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto d = testing::random_dataset(rng, 4, 10, 8, 40);
    MinerConfig c;
    c.minden = 0.01;
    c.k = 1 + trial % 10;
    c.max_len = 6;
    const auto grouped = mine(d, c);
    auto alt = c;
    alt.fusion = FusionMode::AllPairs;
    const auto all_pairs = mine(d, alt);
    if (!identical(grouped.top.entries(), all_pairs.top.entries())) ++mismatches;
    const std::size_t g = examined(grouped);
    const std::size_t a = examined(all_pairs);
    grouped_total += g;
    all_pairs_total += a;
    if (g > a) ++larger;
    if (g < a) ++strictly_smaller;
  }
  o.require(mismatches == 0, std::to_string(mismatches) + " of 50 results differ");
  o.require(larger == 0, std::to_string(larger) + " trials where grouped examined more");
  o.require(strictly_smaller > 0, "grouped never examined fewer candidates");
  if (o.pass) {
    o.detail = "identical results; candidates examined " + std::to_string(grouped_total) +
               " vs " + std::to_string(all_pairs_total) + ", fewer in " +
               std::to_string(strictly_smaller) + "/50";
  }
  return o;
}

// 10 ---------------------------------------------------------------------
Outcome invariants() {
  Outcome o;
  std::mt19937_64 rng(2024);
  int bad_perm = 0, bad_partition = 0, bad_monotone = 0, bad_epe = 0, bad_transform = 0,
      bad_cmin = 0;
  auto is_perm = [](const OpPattern& p) {
    std::vector<int> r(p.ranks().begin(), p.ranks().end());
    std::sort(r.begin(), r.end());
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (r[i] != static_cast<int>(i) + 1) return false;
    }
    return true;
  };
  for (int trial = 0; trial < 60; ++trial) {
    const auto d = testing::random_dataset(rng, 4, 10, 8, 40);
    const auto shrunk = shrink_dataset(d);
    MinerConfig c;
    c.minden = trial % 3 == 0 ? 0.0 : 0.05;
    c.k = 1 + trial % 10;
    c.max_len = 6;

    double last_cmin = 0.0;
    MinerObserver obs;
    obs.on_fusion = [&](const FusionEvent& e) {
      if (!is_perm(e.produced)) ++bad_perm;
      if (e.direction == Direction::Forward &&
          e.produced_rate.hits > std::min(e.prefix_rate.hits, e.suffix_rate.hits)) {
        ++bad_monotone;
      }
    };
    obs.on_offer = [&](const OfferEvent& e) {
      if (e.c_min_after < last_cmin) ++bad_cmin;
      last_cmin = e.c_min_after;
    };
    const auto result = mine(d, c, &obs);

    // Partition: without pruning, the level's occurrence lists tile the windows.
    auto unpruned = c;
    unpruned.pruning = PruningStrategies::none();
    unpruned.max_len = 4;
    std::map<std::pair<int, std::size_t>, std::vector<std::vector<Position>>> tiles;
    MinerObserver part;
    part.on_level_state = [&](const LevelStateEvent& e) {
      auto& per = tiles[{static_cast<int>(e.direction), e.pattern.size()}];
      per.resize(e.occurrences_d1.size());
      for (std::size_t s = 0; s < per.size(); ++s) {
        per[s].insert(per[s].end(), e.occurrences_d1[s].all.begin(), e.occurrences_d1[s].all.end());
      }
    };
    mine(d, unpruned, &part);
    for (auto& [key, per] : tiles) {
      const auto& d1 = key.first == static_cast<int>(Direction::Forward) ? shrunk.positives()
                                                                          : shrunk.negatives();
      for (std::size_t s = 0; s < per.size(); ++s) {
        std::sort(per[s].begin(), per[s].end());
        std::vector<Position> windows;
        for (std::size_t end = key.second; end <= d1[s].values.size(); ++end) {
          windows.push_back(static_cast<Position>(end));
        }
        if (per[s] != windows) ++bad_partition;
      }
    }

    const auto twice = shrink_dataset(shrunk);
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (twice.all()[i]->values != shrunk.all()[i]->values) ++bad_epe;
    }

    std::vector<TimeSeries> pos = d.positives();
    std::vector<TimeSeries> neg = d.negatives();
    for (auto* g : {&pos, &neg}) {
      for (auto& s : *g) {
        for (auto& v : s.values) v = 2 * v + 7;
      }
    }
    const auto moved = mine(BinaryDataset(std::move(pos), std::move(neg)), c);
    if (!identical(result.top.entries(), moved.top.entries())) ++bad_transform;
  }
  o.require(bad_perm == 0, std::to_string(bad_perm) + " invalid permutations");
  o.require(bad_partition == 0, std::to_string(bad_partition) + " broken partitions");
  o.require(bad_monotone == 0, std::to_string(bad_monotone) + " anti-monotonicity violations");
  o.require(bad_epe == 0, std::to_string(bad_epe) + " non-idempotent shrinks");
  o.require(bad_transform == 0, std::to_string(bad_transform) + " results changed under 2x+7");
  o.require(bad_cmin == 0, std::to_string(bad_cmin) + " c_min decreases");
  if (o.pass) {
    o.detail = "60 datasets: permutations, partition, anti-monotonicity, idempotence, 2x+7, c_min";
  }
  return o;
}

// 11 ---------------------------------------------------------------------

// Positives carry one copy of a steep zig-zag at a random offset; every
// series is otherwise independent Gaussian noise.
BinaryDataset planted_motif_dataset(std::mt19937_64& rng) {
  constexpr std::size_t kLength = 64;
  const std::vector<double> motif{0.0, 3.0, -3.0, 2.5, -2.5, 3.5, -3.5};
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> offset(0, kLength - motif.size());
  std::vector<TimeSeries> pos;
  std::vector<TimeSeries> neg;
  for (int i = 0; i < 40; ++i) {
    std::vector<double> v(kLength);
    for (auto& x : v) x = noise(rng);
    const bool positive = i < 20;
    if (positive) {
      const std::size_t at = offset(rng);
      for (std::size_t j = 0; j < motif.size(); ++j) v[at + j] = motif[j] * 1.5 + noise(rng) * 0.05;
    }
    auto s = testing::series("s" + std::to_string(i + 1), std::move(v),
                             positive ? ClassLabel::Positive : ClassLabel::Negative);
    (positive ? pos : neg).push_back(std::move(s));
  }
  return BinaryDataset(std::move(pos), std::move(neg));
}

Outcome classification_sanity() {
  Outcome o;
  const std::vector<OpPattern> worked{OpPattern({1, 3, 2}), OpPattern({1, 3, 2, 4}),
                                      OpPattern({2, 1, 4, 3})};
  const auto shrunk = shrink_dataset(sample());
  const auto small = knn_cross_validate(featurize(shrunk, worked, 0.1, FeatureMode::Count), 3, 1, 0);
  o.require(small.accuracy == 1.0, "sample database accuracy " + fmt(small.accuracy));

  std::mt19937_64 rng(4242);
  const auto d = planted_motif_dataset(rng);
  MinerConfig c;
  c.minden = 0.0;
  c.k = 10;
  const auto result = mine(d, c);
  std::vector<OpPattern> patterns;
  for (const auto& e : result.top.entries()) patterns.push_back(e.pattern);
  const auto features = featurize(shrink_dataset(d), patterns, c.minden, FeatureMode::Density);
  const double copp = knn_cross_validate(features, 5, 10, 0).accuracy;
  const double raw = knn_cross_validate(raw_value_matrix(d), 5, 10, 0).accuracy;
  o.require(copp >= kSyntheticAccuracy, "pattern features " + fmt(copp));
  o.require(raw < copp, "raw values " + fmt(raw) + " not below " + fmt(copp));
  o.detail = "sample database: " + fmt(small.accuracy) + "; planted motif: patterns " + fmt(copp) +
             " vs raw " + fmt(raw) + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "relative order of (4,2,6,5)", relative_order_example},
      {2, "supports, densities and contrast on the sample database", support_density_contrast},
      {3, "extreme points of (9,7,6,5,7,8)", extreme_points_example},
      {4, "general and special fusion", fusion_examples},
      {5, "SRC occurrence lists and consumed sets", src_examples},
      {6, "sample database top-3 end to end", end_to_end_sample},
      {7, "oracle equivalence on random data", oracle_equivalence},
      {8, "pruning soundness", pruning_soundness},
      {9, "grouped vs all-pairs fusion", fusion_dominance},
      {10, "invariant suite", invariants},
      {11, "classification sanity", classification_sanity},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    failed += !outcome.pass;
    std::printf("%s  %2d  %s: %s\n", outcome.pass ? "PASS" : "FAIL", c.id, c.name,
                outcome.detail.c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
