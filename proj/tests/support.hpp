#pragma once

// Random inputs and brute-force references shared by the unit and
// acceptance suites.

#include <algorithm>
#include <array>
#include <cstdio>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "linkbounds/linkbounds.hpp"

namespace testsupport {

using linkbounds::CoauthorGraph;
using linkbounds::Corpus;
using linkbounds::PublicationRecord;

inline std::string author(int i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "u%03d", i);
  return buf;
}

/// Small corpus over [y0, y1] drawn from a pool of `pool` authors.
inline Corpus random_corpus(std::mt19937_64& rng, std::size_t max_papers, int y0 = 2000,
                            int y1 = 2005, int pool = 30) {
  std::uniform_int_distribution<std::size_t> papers(1, max_papers);
  std::uniform_int_distribution<int> year(y0, y1);
  std::uniform_int_distribution<int> who(0, pool - 1);
  std::uniform_int_distribution<int> team(1, 4);
  std::vector<PublicationRecord> records;
  const std::size_t n = papers(rng);
  for (std::size_t i = 0; i < n; ++i) {
    PublicationRecord r{"p" + std::to_string(i), year(rng), {}};
    std::set<std::string> seen;
    for (int k = team(rng); k > 0; --k) {
      auto a = author(who(rng));
      if (seen.insert(a).second) r.authors.push_back(a);
    }
    records.push_back(std::move(r));
  }
  return Corpus(std::move(records), y0, y1);
}

/// Erdos-Renyi style graph with up to `max_nodes` nodes.
inline CoauthorGraph random_graph(std::mt19937_64& rng, int max_nodes) {
  std::uniform_int_distribution<int> nodes(1, max_nodes);
  const int n = nodes(rng);
  std::uniform_real_distribution<double> density(0.0, std::min(1.0, 6.0 / std::max(1, n)));
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const double p = density(rng);
  std::vector<std::string> ids;
  std::vector<std::pair<std::string, std::string>> edges;
  for (int i = 0; i < n; ++i) ids.push_back(author(i));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng) < p) edges.emplace_back(ids[i], ids[j]);
  return CoauthorGraph::from_edges(ids, edges);
}

using StrPair = std::pair<std::string, std::string>;

inline StrPair ordered(std::string a, std::string b) {
  if (b < a) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

/// Nodes and edges of a window computed straight from the records.
struct NaiveGraph {
  std::set<std::string> nodes;
  std::set<StrPair> edges;
};

inline NaiveGraph naive_graph(const Corpus& corpus, const linkbounds::Window& w,
                              bool include_solo = true) {
  NaiveGraph g;
  for (const auto& r : corpus.records()) {
    if (r.year < w.start_year() || r.year > w.end_year()) continue;
    if (r.authors.size() >= 2 || include_solo) g.nodes.insert(r.authors.begin(), r.authors.end());
    for (const auto& a : r.authors)
      for (const auto& b : r.authors)
        if (a < b) g.edges.insert({a, b});
  }
  return g;
}

/// Census counts A, B, C, D by set operations.
inline std::array<std::size_t, 4> naive_census(const NaiveGraph& past, const NaiveGraph& present) {
  std::array<std::size_t, 4> c{};
  for (const auto& e : present.edges) {
    const bool in_u = past.nodes.contains(e.first);
    const bool in_v = past.nodes.contains(e.second);
    if (past.edges.contains(e))
      ++c[0];
    else if (in_u && in_v)
      ++c[1];
    else if (in_u || in_v)
      ++c[2];
    else
      ++c[3];
  }
  return c;
}

/// Adjacency sets keyed by id, for all-pairs reference scoring.
inline std::map<std::string, std::set<std::string>> adjacency(const CoauthorGraph& g) {
  std::map<std::string, std::set<std::string>> adj;
  for (const auto& id : g.ids()) adj[id];
  for (const auto& e : g.edges()) {
    adj[g.id(e.u)].insert(g.id(e.v));
    adj[g.id(e.v)].insert(g.id(e.u));
  }
  return adj;
}

struct NaiveScores {
  std::map<StrPair, double> adamic_adar;
  std::map<StrPair, double> degree_product;
  std::map<StrPair, double> common_neighbors;
};

/// Double loop over all node pairs; keeps non-adjacent pairs with a shared neighbor.
inline NaiveScores naive_scores(const CoauthorGraph& g, double log_base = std::exp(1.0)) {
  auto adj = adjacency(g);
  NaiveScores s;
  for (auto i = adj.begin(); i != adj.end(); ++i)
    for (auto j = std::next(i); j != adj.end(); ++j) {
      if (i->second.contains(j->first)) continue;
      double aa = 0.0;
      double cn = 0.0;
      for (const auto& z : i->second)
        if (j->second.contains(z)) {
          aa += 1.0 / (std::log(static_cast<double>(adj[z].size())) / std::log(log_base));
          cn += 1.0;
        }
      if (cn == 0.0) continue;
      StrPair key{i->first, j->first};
      s.adamic_adar[key] = aa;
      s.common_neighbors[key] = cn;
      s.degree_product[key] =
          static_cast<double>(i->second.size()) * static_cast<double>(j->second.size());
    }
  return s;
}

/// Group structure of a ranking as ids, for comparisons across graphs and bases.
inline std::vector<std::vector<StrPair>> group_ids(const CoauthorGraph& g,
                                                   const linkbounds::RankedList& ranked) {
  std::vector<std::vector<StrPair>> out;
  for (const auto& tg : ranked.groups) {
    auto& v = out.emplace_back();
    for (const auto& p : tg.pairs) v.push_back(ordered(g.id(p.u), g.id(p.v)));
    std::sort(v.begin(), v.end());
  }
  return out;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::mt19937_64 rng(std::random_device{}());
    path_ = std::filesystem::temp_directory_path() /
            ("linkbounds-" + tag + "-" + std::to_string(rng()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string str(const std::string& name = {}) const {
    return name.empty() ? path_.string() : (path_ / name).string();
  }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace testsupport
