#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "linkbounds/graph.hpp"
#include "support.hpp"

using namespace linkbounds;

namespace {

Corpus papers(std::vector<std::vector<std::string>> teams, int year = 2000) {
  std::vector<PublicationRecord> rs;
  for (std::size_t i = 0; i < teams.size(); ++i)
    rs.push_back({"p" + std::to_string(i), year, std::move(teams[i])});
  return Corpus(std::move(rs));
}

std::vector<std::pair<std::string, std::string>> edge_ids(const CoauthorGraph& g) {
  std::vector<std::pair<std::string, std::string>> out;
  for (auto e : g.edges()) out.emplace_back(g.id(e.u), g.id(e.v));
  return out;
}

}  // namespace

TEST(BuildGraph, ThreeAuthorPaperGivesTriangle) {
  auto g = build_graph(papers({{"A", "B", "C"}}), Window(2000, 2000));
  EXPECT_EQ(edge_ids(g), (std::vector<std::pair<std::string, std::string>>{
                             {"A", "B"}, {"A", "C"}, {"B", "C"}}));
  for (auto id : {"A", "B", "C"}) EXPECT_EQ(g.degree(id), 2u);
  EXPECT_EQ(g.neighbors("A"), (std::vector<std::string>{"B", "C"}));
}

TEST(BuildGraph, RepeatedPairCollapses) {
  auto g = build_graph(papers({{"A", "B"}, {"B", "A"}}), Window(2000, 2000));
  EXPECT_EQ(g.edge_count(), 1u);
}

TEST(BuildGraph, SoloAuthorsFlag) {
  auto c = papers({{"A", "B"}, {"C"}});
  auto with = build_graph(c, Window(2000, 2000), true);
  EXPECT_EQ(with.ids(), (std::vector<std::string>{"A", "B", "C"}));
  EXPECT_EQ(with.edge_count(), 1u);
  EXPECT_EQ(with.degree("C"), 0u);
  EXPECT_TRUE(with.neighbors("C").empty());
  auto without = build_graph(c, Window(2000, 2000), false);
  EXPECT_EQ(without.ids(), (std::vector<std::string>{"A", "B"}));
}

TEST(BuildGraph, WindowRestrictsYears) {
  std::vector<PublicationRecord> rs{{"a", 2000, {"A", "B"}}, {"b", 2001, {"B", "C"}},
                                    {"c", 2003, {"C", "D"}}};
  Corpus c(rs);
  auto g = build_graph(c, Window(2000, 2001));
  EXPECT_EQ(g.node_count(), 3u);
  EXPECT_TRUE(g.has_edge("A", "B"));
  EXPECT_FALSE(g.contains("D"));
  EXPECT_EQ(g.window(), Window(2000, 2001));
  EXPECT_EQ(build_graph(c, Window(2010, 2011)).node_count(), 0u);
}

TEST(Graph, UnknownNodeIsAnError) {
  auto g = build_graph(papers({{"A", "B"}}), Window(2000, 2000));
  try {
    g.neighbors("Z");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("node not in graph"), std::string::npos);
  }
  EXPECT_THROW(g.degree("Z"), Error);
  EXPECT_THROW(g.has_edge("A", "Z"), Error);
}

TEST(Graph, FromEdgesRejectsSelfLoops) {
  EXPECT_THROW(CoauthorGraph::from_edges({}, {{"a", "a"}}), Error);
  EXPECT_THROW(NodePair::of(3, 3), Error);
}

TEST(EdgeList, SortedWithHeader) {
  auto g = build_graph(papers({{"C", "A"}, {"B", "A"}}), Window(2000, 2000));
  std::ostringstream out;
  write_edge_list(out, g);
  EXPECT_EQ(out.str(), "author_u,author_v\nA,B\nA,C\n");
}

TEST(GraphProperties, AgreesWithNaiveConstruction) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    auto c = testsupport::random_corpus(rng, 50);
    Window w(2000 + trial % 3, 2002 + trial % 3);
    const bool solo = trial % 2 == 0;
    auto g = build_graph(c, w, solo);
    auto naive = testsupport::naive_graph(c, w, solo);
    EXPECT_EQ(std::set<std::string>(g.ids().begin(), g.ids().end()), naive.nodes);
    std::set<testsupport::StrPair> edges;
    std::size_t degree_sum = 0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
      degree_sum += g.degree(v);
      for (auto u : g.neighbors(v)) {
        EXPECT_TRUE(g.has_edge(u, v));
        EXPECT_TRUE(g.has_edge(v, u));
        EXPECT_NE(u, v);
        edges.insert(testsupport::ordered(g.id(u), g.id(v)));
      }
    }
    EXPECT_EQ(edges, naive.edges);
    EXPECT_EQ(degree_sum, 2 * g.edge_count());

    // order independence
    auto rs = c.records();
    std::shuffle(rs.begin(), rs.end(), rng);
    auto h = build_graph(Corpus(rs, c.year_min(), c.year_max()), w, solo);
    EXPECT_EQ(h.ids(), g.ids());
    EXPECT_EQ(h.edges(), g.edges());
  }
}
