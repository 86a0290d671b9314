#include "copp/pattern_algebra.hpp"

namespace copp {

namespace {

// Relative order of a contiguous run of distinct ranks.
OpPattern rerank(std::span<const int> ranks) {
  std::vector<int> out(ranks.size());
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    int below = 0;
    for (int r : ranks) below += r < ranks[i];
    out[i] = below + 1;
  }
  return OpPattern::trusted(std::move(out));
}

void require_projectable(const OpPattern& p, const char* what) {
  if (p.size() < 3) {
    throw ContractViolation(std::string(what) + " needs a pattern of length >= 3, got " +
                            p.to_string());
  }
}

}  // namespace

OpPattern prefix_opp(const OpPattern& p) {
  require_projectable(p, "prefix_opp");
  return rerank(p.ranks().first(p.size() - 1));
}

OpPattern suffix_opp(const OpPattern& p) {
  require_projectable(p, "suffix_opp");
  return rerank(p.ranks().last(p.size() - 1));
}

FusionResult fuse_matching(const OpPattern& p, const OpPattern& q) {
  const std::size_t m = p.size();
  const int p1 = p.front();
  const int qm = q.back();
  std::vector<int> u(m + 1);

  if (p1 < qm) {
    u[0] = p1;
    u[m] = qm + 1;
    for (std::size_t i = 1; i < m; ++i) u[i] = p[i] < u[m] ? p[i] : p[i] + 1;
    return {FusionResult::Kind::General, OpPattern::trusted(std::move(u)), std::nullopt};
  }
  if (p1 > qm) {
    u[0] = p1 + 1;
    u[m] = qm;
    for (std::size_t j = 0; j + 1 < m; ++j) u[j + 1] = q[j] < u[0] ? q[j] : q[j] + 1;
    return {FusionResult::Kind::General, OpPattern::trusted(std::move(u)), std::nullopt};
  }

  // p1 == qm: the middle ranks are shared, only the endpoints differ.
  for (std::size_t i = 1; i < m; ++i) u[i] = p[i] < p1 ? p[i] : p[i] + 1;
  std::vector<int> v = u;
  u[0] = p1;
  u[m] = p1 + 1;
  v[0] = p1 + 1;
  v[m] = p1;
  return {FusionResult::Kind::Special, OpPattern::trusted(std::move(u)),
          OpPattern::trusted(std::move(v))};
}

std::optional<FusionResult> fuse(const OpPattern& p, const OpPattern& q) {
  if (p.size() != q.size() || p.size() < 2) {
    throw ContractViolation("fuse needs two patterns of equal length >= 2, got " + p.to_string() +
                            " and " + q.to_string());
  }
  if (p.size() > 2 && suffix_opp(p) != prefix_opp(q)) return std::nullopt;
  return fuse_matching(p, q);
}

Group group_of(const OpPattern& p) noexcept {
  return p[0] < p[1] ? Group::Rising : Group::Falling;
}

std::vector<FusionPair> group_fusion_pairs(std::size_t group1_size, std::size_t group2_size) {
  std::vector<FusionPair> pairs;
  pairs.reserve(2 * group1_size * group2_size);
  for (std::size_t i = 0; i < group1_size; ++i)
    for (std::size_t j = 0; j < group2_size; ++j)
      pairs.push_back({Group::Rising, i, Group::Falling, j});
  for (std::size_t i = 0; i < group2_size; ++i)
    for (std::size_t j = 0; j < group1_size; ++j)
      pairs.push_back({Group::Falling, i, Group::Rising, j});
  return pairs;
}

std::vector<FusionPair> all_fusion_pairs(std::size_t group1_size, std::size_t group2_size) {
  std::vector<FusionPair> pairs;
  const std::size_t total = group1_size + group2_size;
  pairs.reserve(total * total);
  auto locate = [&](std::size_t k) {
    return k < group1_size ? std::pair{Group::Rising, k} : std::pair{Group::Falling, k - group1_size};
  };
  for (std::size_t a = 0; a < total; ++a) {
    for (std::size_t b = 0; b < total; ++b) {
      auto [pg, pi] = locate(a);
      auto [sg, si] = locate(b);
      pairs.push_back({pg, pi, sg, si});
    }
  }
  return pairs;
}

}  // namespace copp
