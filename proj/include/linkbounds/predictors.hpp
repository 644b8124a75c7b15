#pragma once

// Structural link predictors over a past coauthor graph.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "linkbounds/csv.hpp"
#include "linkbounds/error.hpp"
#include "linkbounds/graph.hpp"

namespace linkbounds {

enum class Predictor { adamic_adar, degree_product, common_neighbors };

inline std::string_view to_string(Predictor p) noexcept {
  switch (p) {
    case Predictor::adamic_adar: return "adamic-adar";
    case Predictor::degree_product: return "degree-product";
    case Predictor::common_neighbors: return "common-neighbors";
  }
  return "?";
}

inline Predictor parse_predictor(std::string_view name) {
  for (auto p : {Predictor::adamic_adar, Predictor::degree_product, Predictor::common_neighbors})
    if (name == to_string(p)) return p;
  throw ConfigError("unknown predictor '" + std::string(name) +
                    "' (expected adamic-adar, degree-product or common-neighbors)");
}

struct ScoringOptions {
  // Base of the logarithm in the Adamic-Adar weight. Rankings do not depend on it.
  double log_base = std::numbers::e;
};

struct ScoredPair {
  NodePair pair;
  double score = 0.0;
};

struct TieGroup {
  double score = 0.0;
  std::vector<NodePair> pairs;  // sorted; order carries no meaning
};

/// Candidate pairs grouped by exactly equal score, groups in strictly
/// decreasing score order.
struct RankedList {
  Predictor kind = Predictor::adamic_adar;
  std::vector<TieGroup> groups;

  std::size_t pair_count() const noexcept {
    std::size_t n = 0;
    for (const auto& g : groups) n += g.pairs.size();
    return n;
  }
};

/// Non-adjacent pairs of distinct nodes sharing at least one neighbor,
/// sorted.
inline std::vector<NodePair> candidate_pairs(const CoauthorGraph& g) {
  const auto n = static_cast<NodeId>(g.node_count());
  std::vector<NodePair> out;
  std::vector<NodeId> mark(n, n);  // mark[y] == x: y seen or adjacent while visiting x
  for (NodeId x = 0; x < n; ++x) {
    auto nx = g.neighbors(x);
    for (NodeId z : nx) mark[z] = x;
    std::size_t first = out.size();
    for (NodeId z : nx)
      for (NodeId y : g.neighbors(z))
        if (y > x && mark[y] != x) {
          mark[y] = x;
          out.push_back({x, y});
        }
    std::sort(out.begin() + static_cast<std::ptrdiff_t>(first), out.end());
  }
  return out;
}

namespace detail {

__extension__ using u128 = unsigned __int128;

// lcm(1..64): common denominator for sums of 1/k, k = perfect-power exponent.
constexpr u128 exponent_denominator() {
  u128 l = 1;
  for (std::uint64_t k = 2; k <= 64; ++k) {
    u128 a = l, b = k;
    while (b) {
      u128 t = a % b;
      a = b;
      b = t;
    }
    l = l / a * k;
  }
  return l;
}

inline std::uint64_t ipow_saturating(std::uint64_t base, unsigned e) {
  u128 r = 1;
  for (unsigned i = 0; i < e; ++i) {
    r *= base;
    if (r > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(r);
}

// d = root^exponent with the largest possible exponent (d >= 2).
inline std::pair<std::uint64_t, unsigned> perfect_power(std::uint64_t d) {
  for (unsigned k = 63; k >= 2; --k) {
    auto r = static_cast<std::uint64_t>(std::llround(std::pow(static_cast<double>(d), 1.0 / k)));
    for (std::uint64_t c = (r > 2 ? r - 1 : 2); c <= r + 1; ++c)
      if (ipow_saturating(c, k) == d) return {c, k};
  }
  return {d, 1};
}

/// Adamic-Adar sum with a canonical evaluation order. Each neighbor degree d
/// is written as r^k, so 1/log d = (1/k) / log r; the 1/k parts are summed
/// exactly per root r before any rounding. Pairs whose scores are equal as
/// real numbers therefore get bit-identical doubles, in any log base.
class AdamicAdarScorer {
 public:
  AdamicAdarScorer(const CoauthorGraph& g, double log_base) : g_(g) {
    if (!(log_base > 1.0) || !std::isfinite(log_base))
      throw ConfigError("log base must be a finite number > 1");
    std::size_t max_deg = 0;
    for (NodeId v = 0; v < g.node_count(); ++v) max_deg = std::max(max_deg, g.degree(v));
    roots_.resize(max_deg + 1);
    inv_log_.resize(max_deg + 1, 0.0);
    const double log_b = std::log(log_base);
    for (std::size_t d = 2; d <= max_deg; ++d) {
      roots_[d] = perfect_power(d);
      inv_log_[d] = 1.0 / (std::log(static_cast<double>(d)) / log_b);
    }
  }

  double operator()(NodeId x, NodeId y) const {
    static constexpr u128 denom = exponent_denominator();
    terms_.clear();
    for_each_common(x, y, [&](NodeId z) {
      std::size_t d = g_.degree(z);
      if (d < 2) throw std::logic_error("common neighbor with degree < 2");
      auto [r, k] = roots_[d];
      terms_.push_back({r, denom / k});
    });
    std::sort(terms_.begin(), terms_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    double sum = 0.0;
    for (std::size_t i = 0; i < terms_.size();) {
      std::uint64_t r = terms_[i].first;
      u128 num = 0;
      for (; i < terms_.size() && terms_[i].first == r; ++i) num += terms_[i].second;
      sum += static_cast<double>(num) / static_cast<double>(denom) * inv_log_[r];
    }
    return sum;
  }

  template <typename Fn>
  void for_each_common(NodeId x, NodeId y, Fn&& fn) const {
    auto a = g_.neighbors(x);
    auto b = g_.neighbors(y);
    for (std::size_t i = 0, j = 0; i < a.size() && j < b.size();) {
      if (a[i] < b[j]) {
        ++i;
      } else if (b[j] < a[i]) {
        ++j;
      } else {
        fn(a[i]);
        ++i;
        ++j;
      }
    }
  }

 private:
  const CoauthorGraph& g_;
  std::vector<std::pair<std::uint64_t, unsigned>> roots_;
  std::vector<double> inv_log_;
  mutable std::vector<std::pair<std::uint64_t, u128>> terms_;
};

inline std::size_t common_neighbor_count(const CoauthorGraph& g, NodeId x, NodeId y) {
  auto a = g.neighbors(x);
  auto b = g.neighbors(y);
  std::size_t n = 0;
  for (std::size_t i = 0, j = 0; i < a.size() && j < b.size();) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

class Scorer {
 public:
  Scorer(Predictor kind, const CoauthorGraph& g, const ScoringOptions& opts)
      : kind_(kind), g_(g) {
    if (kind == Predictor::adamic_adar) aa_.emplace(g, opts.log_base);
  }

  double operator()(NodeId x, NodeId y) const {
    switch (kind_) {
      case Predictor::adamic_adar: return (*aa_)(x, y);
      case Predictor::degree_product:
        return static_cast<double>(g_.degree(x)) * static_cast<double>(g_.degree(y));
      case Predictor::common_neighbors:
        return static_cast<double>(common_neighbor_count(g_, x, y));
    }
    return 0.0;
  }

 private:
  Predictor kind_;
  const CoauthorGraph& g_;
  std::optional<AdamicAdarScorer> aa_;
};

}  // namespace detail

/// Score of one pair: Adamic-Adar sums 1/log deg(z) over common neighbors z,
/// Degree Product is deg(x)*deg(y), Common Neighbors counts shared neighbors.
inline double score(Predictor kind, const CoauthorGraph& g, NodeId x, NodeId y,
                    const ScoringOptions& opts = {}) {
  if (x >= g.node_count() || y >= g.node_count()) throw Error("node not in graph");
  if (x == y) throw Error("pair endpoints must be distinct");
  return detail::Scorer(kind, g, opts)(x, y);
}

inline double score(Predictor kind, const CoauthorGraph& g, std::string_view x,
                    std::string_view y, const ScoringOptions& opts = {}) {
  return score(kind, g, g.at(x), g.at(y), opts);
}

inline std::vector<TieGroup> group_by_score(std::vector<ScoredPair> scored) {
  std::sort(scored.begin(), scored.end(), [](const ScoredPair& a, const ScoredPair& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.pair < b.pair;
  });
  std::vector<TieGroup> groups;
  for (const auto& s : scored) {
    if (groups.empty() || groups.back().score != s.score) groups.push_back({s.score, {}});
    groups.back().pairs.push_back(s.pair);
  }
  return groups;
}

/// Scores every candidate pair and groups equal scores.
inline RankedList rank(Predictor kind, const CoauthorGraph& g, const ScoringOptions& opts = {}) {
  detail::Scorer scorer(kind, g, opts);
  std::vector<ScoredPair> scored;
  for (const auto& p : candidate_pairs(g)) scored.push_back({p, scorer(p.u, p.v)});
  return {kind, group_by_score(std::move(scored))};
}

/// `rank_group,score,author_u,author_v` with groups numbered from 1.
inline void write_ranked_csv(std::ostream& out, const CoauthorGraph& g, const RankedList& ranked) {
  out << "rank_group,score,author_u,author_v\n";
  std::size_t group = 0;
  for (const auto& tg : ranked.groups) {
    ++group;
    for (const auto& p : tg.pairs)
      out << group << ',' << csv::significant(tg.score, 9) << ',' << csv::field(g.id(p.u)) << ','
          << csv::field(g.id(p.v)) << '\n';
  }
}

}  // namespace linkbounds
