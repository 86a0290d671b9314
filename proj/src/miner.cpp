#include "copp/miner.hpp"

#include <algorithm>
#include <chrono>
#include <unordered_map>

#include "copp/epe.hpp"

namespace copp {

std::size_t MineResult::total_generated() const noexcept {
  std::size_t n = 0;
  for (const auto& l : levels) n += l.generated;
  return n;
}

std::size_t MineResult::total_pruned() const noexcept {
  std::size_t n = 0;
  for (const auto& l : levels) n += l.pruned_s1 + l.pruned_s2 + l.pruned_s3;
  return n;
}

PruneDecision apply_pruning(const ClassRate& rate_d1, double c_min, Direction direction,
                            const PruningStrategies& strategies) noexcept {
  const double r = rate_d1.value();
  if (direction == Direction::Forward) {
    if (strategies.zero_rate && rate_d1.hits == 0) return PruneDecision::Strategy1;
    if (strategies.forward_bound && c_min > 0.0 && r <= c_min) return PruneDecision::Strategy2;
  } else {
    if (strategies.reverse_bound && r <= c_min) return PruneDecision::Strategy3;
  }
  return PruneDecision::Keep;
}

namespace {

struct Candidate {
  OpPattern pattern;
  // Relative orders of the first / last m-1 ranks; empty for length 2, where
  // every pair overlaps trivially.
  OpPattern prefix_key;
  OpPattern suffix_key;
  std::vector<Occurrences> d1;
  std::vector<Occurrences> d2;
  ClassRate rate_d1;
};

Candidate make_candidate(OpPattern pattern, std::vector<Occurrences> d1,
                         std::vector<Occurrences> d2, ClassRate rate_d1) {
  Candidate c{std::move(pattern), {}, {}, std::move(d1), std::move(d2), rate_d1};
  if (c.pattern.size() >= 3) {
    c.prefix_key = prefix_opp(c.pattern);
    c.suffix_key = suffix_opp(c.pattern);
  }
  return c;
}

ClassRate rate_of(std::span<const std::size_t> supports, std::span<const TimeSeries> series,
                  double minden) {
  ClassRate rate{0, series.size()};
  for (std::size_t s = 0; s < series.size(); ++s) {
    if (exceeds_density(supports[s], series[s].values.size(), minden)) ++rate.hits;
  }
  return rate;
}

// Appends `pattern` with its last rank `last` inserted (1..m+1).
OpPattern extend_with_last(const OpPattern& p, int last) {
  std::vector<int> ranks;
  ranks.reserve(p.size() + 1);
  for (int r : p.ranks()) ranks.push_back(r >= last ? r + 1 : r);
  ranks.push_back(last);
  return OpPattern::trusted(std::move(ranks));
}

class PassRunner {
 public:
  PassRunner(std::span<const TimeSeries> d1, std::span<const TimeSeries> d2,
             const MinerConfig& config, FusionMode mode, Direction direction, TopKSet& top,
             std::vector<LevelReport>& levels, const MinerObserver* observer)
      : d1_(d1),
        d2_(d2),
        config_(config),
        mode_(mode),
        direction_(direction),
        top_(top),
        levels_(levels),
        observer_(observer) {}

  void run() {
    seed();
    std::size_t longest = 0;
    for (const auto& s : d1_) longest = std::max(longest, s.values.size());
    for (const auto& s : d2_) longest = std::max(longest, s.values.size());
    std::size_t limit = longest;
    if (config_.max_len) limit = std::min(limit, *config_.max_len);

    std::size_t m = 2;
    while (has_sources() && m < limit) {
      LevelReport report;
      report.direction = direction_;
      report.length = m + 1;
      report.group1_sources = group1_.size();
      report.group2_sources = group2_.size();
      report.enumeration_bound = (group1_.size() + group2_.size()) * (m + 1);
      next1_.clear();
      next2_.clear();

      if (mode_ == FusionMode::Enumerate) {
        enumerate_level(m, report);
      } else {
        const auto pairs = mode_ == FusionMode::Grouped
                               ? group_fusion_pairs(group1_.size(), group2_.size())
                               : all_fusion_pairs(group1_.size(), group2_.size());
        for (const auto& pair : pairs) {
          Candidate& p = source(pair.prefix_group, pair.prefix_index);
          Candidate& q = source(pair.suffix_group, pair.suffix_index);
          ++report.fusion_checks;
          if (p.suffix_key != q.prefix_key) continue;
          evaluate(p, q, m, report);
        }
      }

      emit_level_state();
      report.kept_group1 = next1_.size();
      report.kept_group2 = next2_.size();
      levels_.push_back(report);
      order(next1_);
      order(next2_);
      group1_ = std::move(next1_);
      group2_ = std::move(next2_);
      ++m;
    }
  }

 private:
  bool has_sources() const {
    if (mode_ == FusionMode::Grouped) return !group1_.empty() && !group2_.empty();
    return !group1_.empty() || !group2_.empty();
  }

  Candidate& source(Group g, std::size_t i) { return g == Group::Rising ? group1_[i] : group2_[i]; }

  void seed() {
    std::vector<Occurrences> rise1, fall1, rise2, fall2;
    std::vector<std::size_t> rise_sup, fall_sup;
    for (const auto& s : d1_) {
      auto seeds = seed_length2(s.values);
      rise_sup.push_back(seeds.rising.support());
      fall_sup.push_back(seeds.falling.support());
      rise1.push_back(std::move(seeds.rising));
      fall1.push_back(std::move(seeds.falling));
    }
    for (const auto& s : d2_) {
      auto seeds = seed_length2(s.values);
      rise2.push_back(std::move(seeds.rising));
      fall2.push_back(std::move(seeds.falling));
    }
    group1_.clear();
    group2_.clear();
    group1_.push_back(make_candidate(OpPattern::trusted({1, 2}), std::move(rise1), std::move(rise2),
                                     rate_of(rise_sup, d1_, config_.minden)));
    group2_.push_back(make_candidate(OpPattern::trusted({2, 1}), std::move(fall1), std::move(fall2),
                                     rate_of(fall_sup, d1_, config_.minden)));
  }

  void enumerate_level(std::size_t m, LevelReport& report) {
    std::unordered_map<OpPattern, std::pair<Group, std::size_t>, OpPatternHash> index;
    for (std::size_t i = 0; i < group1_.size(); ++i) index.emplace(group1_[i].pattern, std::pair{Group::Rising, i});
    for (std::size_t i = 0; i < group2_.size(); ++i) index.emplace(group2_[i].pattern, std::pair{Group::Falling, i});

    for (Group g : {Group::Rising, Group::Falling}) {
      const std::size_t n = g == Group::Rising ? group1_.size() : group2_.size();
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<OpPattern> done;
        for (int last = 1; last <= static_cast<int>(m) + 1; ++last) {
          Candidate& p = source(g, i);
          OpPattern w = extend_with_last(p.pattern, last);
          OpPattern q_pattern = suffix_opp(w);
          ++report.fusion_checks;
          if (std::find(done.begin(), done.end(), q_pattern) != done.end()) continue;
          done.push_back(q_pattern);
          auto it = index.find(q_pattern);
          if (it != index.end()) {
            evaluate(p, source(it->second.first, it->second.second), m, report);
            continue;
          }
          // The suffix was pruned earlier, so no occurrence of w can be built
          // from the available sets; evaluate it with empty occurrence lists.
          FusionResult fusion = fuse_matching(p.pattern, q_pattern);
          std::vector<OpPattern> produced{fusion.first};
          if (fusion.second) produced.push_back(*fusion.second);
          for (auto& pattern : produced) {
            std::vector<Occurrences> e1(d1_.size());
            std::vector<Occurrences> e2(d2_.size());
            std::vector<std::size_t> zeros(d1_.size(), 0);
            const ClassRate none{0, d1_.size()};
            consider(p.pattern, q_pattern, p.rate_d1, none, std::move(pattern), std::move(e1), zeros,
                     none, [&]() { return std::move(e2); }, report);
          }
        }
      }
    }
  }

  void evaluate(Candidate& p, Candidate& q, std::size_t m, LevelReport& report) {
    const FusionResult fusion = fuse_matching(p.pattern, q.pattern);
    const std::size_t outputs = fusion.is_special() ? 2 : 1;

    std::vector<std::vector<Occurrences>> occ1(outputs, std::vector<Occurrences>(d1_.size()));
    std::vector<std::vector<std::size_t>> sup1(outputs, std::vector<std::size_t>(d1_.size(), 0));
    for (std::size_t s = 0; s < d1_.size(); ++s) {
      auto out = src_fuse(p.d1[s], q.d1[s], fusion, d1_[s].values, m);
      sup1[0][s] = out.first.size();
      occ1[0][s] = Occurrences::from_positions(std::move(out.first));
      if (outputs == 2) {
        sup1[1][s] = out.second.size();
        occ1[1][s] = Occurrences::from_positions(std::move(out.second));
      }
    }

    // D2 occurrences are only joined once some output survives pruning.
    std::optional<std::vector<SrcOutcome>> joined_d2;
    auto d2_for = [&](std::size_t which) {
      if (!joined_d2) {
        joined_d2.emplace();
        for (std::size_t s = 0; s < d2_.size(); ++s) {
          joined_d2->push_back(src_fuse(p.d2[s], q.d2[s], fusion, d2_[s].values, m));
        }
      }
      std::vector<Occurrences> occ(d2_.size());
      for (std::size_t s = 0; s < d2_.size(); ++s) {
        auto& positions = which == 0 ? (*joined_d2)[s].first : (*joined_d2)[s].second;
        occ[s] = Occurrences::from_positions(std::move(positions));
      }
      return occ;
    };

    OpPattern produced[2] = {fusion.first, fusion.second.value_or(OpPattern{})};
    for (std::size_t w = 0; w < outputs; ++w) {
      const ClassRate rate = rate_of(sup1[w], d1_, config_.minden);
      consider(p.pattern, q.pattern, p.rate_d1, q.rate_d1, std::move(produced[w]), std::move(occ1[w]), sup1[w], rate,
               [&, w]() { return d2_for(w); }, report);
    }
  }

  template <typename D2Source>
  void consider(const OpPattern& prefix, const OpPattern& suffix, ClassRate prefix_rate,
                ClassRate suffix_rate, OpPattern pattern,
                std::vector<Occurrences> occ_d1, std::span<const std::size_t> sup_d1,
                ClassRate rate_d1, D2Source&& d2_source, LevelReport& report) {
    ++report.generated;
    const PruneDecision decision =
        apply_pruning(rate_d1, top_.c_min(), direction_, config_.pruning);
    if (observer_ && observer_->on_fusion) {
      observer_->on_fusion(FusionEvent{direction_, prefix, suffix, pattern, prefix_rate, suffix_rate,
                                       rate_d1, sup_d1, decision});
    }
    switch (decision) {
      case PruneDecision::Strategy1: ++report.pruned_s1; return;
      case PruneDecision::Strategy2: ++report.pruned_s2; return;
      case PruneDecision::Strategy3: ++report.pruned_s3; return;
      case PruneDecision::Keep: break;
    }

    std::vector<Occurrences> occ_d2 = d2_source();
    std::vector<std::size_t> sup_d2;
    sup_d2.reserve(occ_d2.size());
    for (const auto& o : occ_d2) sup_d2.push_back(o.support());
    const ClassRate rate_d2 = rate_of(sup_d2, d2_, config_.minden);

    TopKEntry entry{pattern, contrast_of(rate_d1, rate_d2), direction_, 0.0, 0.0};
    entry.r_plus = direction_ == Direction::Forward ? rate_d1.value() : rate_d2.value();
    entry.r_minus = direction_ == Direction::Forward ? rate_d2.value() : rate_d1.value();
    const bool accepted = top_.offer(entry);
    if (observer_ && observer_->on_offer) {
      observer_->on_offer(OfferEvent{direction_, entry, accepted, top_.c_min()});
    }

    auto& target = group_of(pattern) == Group::Rising ? next1_ : next2_;
    target.push_back(make_candidate(std::move(pattern), std::move(occ_d1), std::move(occ_d2), rate_d1));
  }

  void order(std::vector<Candidate>& level) const {
    switch (config_.order) {
      case CandidateOrder::SupportDescending:
        std::stable_sort(level.begin(), level.end(), [](const Candidate& a, const Candidate& b) {
          return a.rate_d1.hits > b.rate_d1.hits;
        });
        break;
      case CandidateOrder::SupportAscending:
        std::stable_sort(level.begin(), level.end(), [](const Candidate& a, const Candidate& b) {
          return a.rate_d1.hits < b.rate_d1.hits;
        });
        break;
      case CandidateOrder::Generation:
        break;
    }
  }

  void emit_level_state() const {
    if (!observer_ || !observer_->on_level_state) return;
    for (const auto* g : {&group1_, &group2_}) {
      for (const auto& c : *g) observer_->on_level_state(LevelStateEvent{direction_, c.pattern, c.d1});
    }
  }

  std::span<const TimeSeries> d1_;
  std::span<const TimeSeries> d2_;
  const MinerConfig& config_;
  FusionMode mode_;
  Direction direction_;
  TopKSet& top_;
  std::vector<LevelReport>& levels_;
  const MinerObserver* observer_;
  std::vector<Candidate> group1_;
  std::vector<Candidate> group2_;
  std::vector<Candidate> next1_;
  std::vector<Candidate> next2_;
};

void validate(const MinerConfig& config) {
  validate_minden(config.minden);
  if (config.k == 0) throw ConfigError("k must be at least 1");
  if (config.max_len && *config.max_len < 2) throw ConfigError("max_len must be at least 2");
}

}  // namespace

void contrast_pass(std::span<const TimeSeries> d1, std::span<const TimeSeries> d2,
                   const MinerConfig& config, Direction direction, TopKSet& top,
                   std::vector<LevelReport>& levels, const MinerObserver* observer) {
  validate(config);
  PassRunner(d1, d2, config, config.fusion, direction, top, levels, observer).run();
}

MineResult mine(const BinaryDataset& dataset, const MinerConfig& config,
                const MinerObserver* observer) {
  validate(config);
  const auto started = std::chrono::steady_clock::now();

  MineResult result;
  result.top = TopKSet(config.k);
  MinerConfig effective = config;
  if (!config.epe && config.fusion == FusionMode::Grouped) {
    effective.fusion = FusionMode::AllPairs;
    result.fusion_fell_back = true;
  }
  result.fusion_used = effective.fusion;

  const BinaryDataset mined = config.epe ? shrink_dataset(dataset) : dataset;
  contrast_pass(mined.positives(), mined.negatives(), effective, Direction::Forward, result.top,
                result.levels, observer);
  result.c_min_after_forward = result.top.c_min();
  contrast_pass(mined.negatives(), mined.positives(), effective, Direction::Reverse, result.top,
                result.levels, observer);

  for (const auto& l : result.levels) {
    if (l.kept_group1 + l.kept_group2 > 0) result.peak_length = std::max(result.peak_length, l.length);
  }
  result.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

}  // namespace copp
