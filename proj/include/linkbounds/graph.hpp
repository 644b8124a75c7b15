#pragma once

// Binary undirected coauthor graphs built from a corpus window.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "linkbounds/corpus.hpp"
#include "linkbounds/csv.hpp"
#include "linkbounds/error.hpp"
#include "linkbounds/windowing.hpp"

namespace linkbounds {

using NodeId = std::uint32_t;

/// Unordered pair of distinct nodes, stored with u < v.
struct NodePair {
  NodeId u = 0;
  NodeId v = 0;

  static NodePair of(NodeId a, NodeId b) {
    if (a == b) throw Error("pair endpoints must be distinct");
    return a < b ? NodePair{a, b} : NodePair{b, a};
  }

  std::uint64_t key() const noexcept { return (std::uint64_t{u} << 32) | v; }

  friend bool operator==(const NodePair&, const NodePair&) = default;
  friend auto operator<=>(const NodePair&, const NodePair&) = default;
};

struct NodePairHash {
  std::size_t operator()(const NodePair& p) const noexcept {
    return std::hash<std::uint64_t>{}(p.key());
  }
};

/// Immutable coauthor graph. Node ids are dense indices assigned in
/// lexicographic order of author id, so index order equals name order.
/// Copies share the underlying storage.
class CoauthorGraph {
 public:
  /// Builds a graph from explicit nodes and edges. Edge endpoints are added
  /// as nodes if missing; self-loops are rejected, repeated edges collapse.
  static CoauthorGraph from_edges(std::vector<std::string> nodes,
                                  const std::vector<std::pair<std::string, std::string>>& edges,
                                  Window window = Window(0, 0)) {
    for (const auto& [a, b] : edges) {
      if (a == b) throw Error("self-loop on '" + a + "'");
      nodes.push_back(a);
      nodes.push_back(b);
    }
    CoauthorGraph g(std::move(nodes), window);
    std::vector<NodePair> pairs;
    pairs.reserve(edges.size());
    for (const auto& [a, b] : edges) pairs.push_back(NodePair::of(*g.find(a), *g.find(b)));
    g.set_edges(std::move(pairs));
    return g;
  }

  std::size_t node_count() const noexcept { return data_->ids.size(); }
  std::size_t edge_count() const noexcept { return data_->edge_keys.size(); }
  const Window& window() const noexcept { return data_->window; }

  const std::string& id(NodeId v) const { return data_->ids.at(v); }
  const std::vector<std::string>& ids() const noexcept { return data_->ids; }

  std::optional<NodeId> find(std::string_view author) const {
    auto it = data_->index.find(author);
    if (it == data_->index.end()) return std::nullopt;
    return it->second;
  }

  NodeId at(std::string_view author) const {
    if (auto v = find(author)) return *v;
    throw Error("node not in graph: '" + std::string(author) + "'");
  }

  bool contains(std::string_view author) const { return find(author).has_value(); }

  /// Sorted neighbor indices.
  std::span<const NodeId> neighbors(NodeId v) const {
    check(v);
    return data_->adjacency[v];
  }

  std::vector<std::string> neighbors(std::string_view author) const {
    std::vector<std::string> out;
    for (NodeId n : neighbors(at(author))) out.push_back(id(n));
    return out;
  }

  std::size_t degree(NodeId v) const { return neighbors(v).size(); }
  std::size_t degree(std::string_view author) const { return degree(at(author)); }

  bool has_edge(NodeId a, NodeId b) const {
    check(a);
    check(b);
    if (a == b) return false;
    return data_->edge_keys.contains(NodePair::of(a, b).key());
  }

  bool has_edge(std::string_view a, std::string_view b) const { return has_edge(at(a), at(b)); }

  /// All edges, sorted.
  std::vector<NodePair> edges() const {
    std::vector<NodePair> out;
    out.reserve(edge_count());
    for (NodeId u = 0; u < node_count(); ++u)
      for (NodeId v : data_->adjacency[u])
        if (u < v) out.push_back({u, v});
    return out;
  }

 private:
  struct Data {
    Window window{0, 0};
    std::vector<std::string> ids;
    std::unordered_map<std::string_view, NodeId> index;  // views into ids
    std::vector<std::vector<NodeId>> adjacency;
    std::unordered_set<std::uint64_t> edge_keys;
  };

  CoauthorGraph(std::vector<std::string> nodes, Window window)
      : data_(std::make_shared<Data>()) {
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    data_->window = window;
    data_->ids = std::move(nodes);
    data_->index.reserve(data_->ids.size());
    for (NodeId i = 0; i < data_->ids.size(); ++i) data_->index.emplace(data_->ids[i], i);
    data_->adjacency.resize(data_->ids.size());
  }

  void set_edges(std::vector<NodePair> pairs) {
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    data_->edge_keys.reserve(pairs.size());
    for (const auto& p : pairs) {
      data_->edge_keys.insert(p.key());
      data_->adjacency[p.u].push_back(p.v);
      data_->adjacency[p.v].push_back(p.u);
    }
    for (auto& adj : data_->adjacency) std::sort(adj.begin(), adj.end());
  }

  void check(NodeId v) const {
    if (v >= node_count()) throw Error("node index out of range");
  }

  friend CoauthorGraph build_graph(const Corpus&, const Window&, bool);

  std::shared_ptr<Data> data_;
};

/// Coauthor graph of all papers published inside `window`. Every author pair
/// of a paper becomes an edge. Authors of single-author papers become
/// isolated nodes when include_solo_authors is set.
inline CoauthorGraph build_graph(const Corpus& corpus, const Window& window,
                                 bool include_solo_authors = true) {
  std::vector<std::string> nodes;
  for (const auto& r : corpus.records()) {
    if (!window.contains(r.year)) continue;
    if (r.authors.size() < 2 && !include_solo_authors) continue;
    nodes.insert(nodes.end(), r.authors.begin(), r.authors.end());
  }
  CoauthorGraph g(std::move(nodes), window);
  std::vector<NodePair> pairs;
  for (const auto& r : corpus.records()) {
    if (!window.contains(r.year) || r.authors.size() < 2) continue;
    std::vector<NodeId> members;
    members.reserve(r.authors.size());
    for (const auto& a : r.authors) members.push_back(*g.find(a));
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j)
        pairs.push_back(NodePair::of(members[i], members[j]));
  }
  g.set_edges(std::move(pairs));
  return g;
}

/// `author_u,author_v` rows, u < v, sorted, with header.
inline void write_edge_list(std::ostream& out, const CoauthorGraph& g) {
  out << "author_u,author_v\n";
  for (const auto& e : g.edges()) out << csv::field(g.id(e.u)) << ',' << csv::field(g.id(e.v)) << '\n';
}

}  // namespace linkbounds
