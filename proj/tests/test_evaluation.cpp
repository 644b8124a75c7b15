#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "linkbounds/evaluation.hpp"
#include "support.hpp"

using namespace linkbounds;

namespace {

CoauthorGraph graph_of(std::vector<std::vector<std::string>> teams, int year) {
  std::vector<PublicationRecord> rs;
  for (std::size_t i = 0; i < teams.size(); ++i)
    rs.push_back({"p" + std::to_string(i), year, std::move(teams[i])});
  return build_graph(Corpus(std::move(rs)), Window(year, year));
}

// Singleton groups over pairs (0,k+1); `truth_flags` marks which are positives.
std::pair<RankedList, GroundTruth> singletons(const std::vector<bool>& truth_flags) {
  RankedList r;
  GroundTruth t;
  double s = 10.0;
  for (std::size_t i = 0; i < truth_flags.size(); ++i) {
    auto p = NodePair::of(0, static_cast<NodeId>(i + 1));
    r.groups.push_back({s--, {p}});
    if (truth_flags[i]) t.positives.push_back(p);
  }
  return {r, t};
}

}  // namespace

TEST(GroundTruth, CensusWorkedExample) {
  auto past = graph_of({{"X", "Y"}, {"Y", "Q"}}, 2000);
  auto present = graph_of({{"X", "Y"}, {"X", "Q"}, {"Q", "Z"}, {"Z", "W"}}, 2001);
  auto t = ground_truth_type_b(past, present);
  ASSERT_EQ(t.positives.size(), 1u);
  EXPECT_EQ(t.positives[0], NodePair::of(past.at("X"), past.at("Q")));
  ASSERT_TRUE(t.frame);
  EXPECT_EQ(t.frame->past(), Window(2000, 2000));
}

TEST(GroundTruth, EmptyCases) {
  auto past = graph_of({{"A", "B", "C"}}, 2000);
  EXPECT_TRUE(ground_truth_type_b(past, graph_of({{"A", "B"}}, 2001)).positives.empty());
  EXPECT_TRUE(ground_truth_type_b(CoauthorGraph::from_edges({}, {}), graph_of({{"A", "B"}}, 2001))
                  .positives.empty());
}

TEST(PrCurve, AlternatingFlags) {
  auto [r, t] = singletons({true, false, true, false});
  auto c = pr_curve(r, t);
  ASSERT_EQ(c.points.size(), 4u);
  const double p[] = {1.0, 0.5, 2.0 / 3.0, 0.5};
  const double rc[] = {0.5, 0.5, 1.0, 1.0};
  for (int i = 0; i < 4; ++i) {
    EXPECT_DOUBLE_EQ(c.points[i].precision, p[i]);
    EXPECT_DOUBLE_EQ(c.points[i].recall, rc[i]);
    EXPECT_EQ(c.points[i].cumulative_k, static_cast<std::size_t>(i + 1));
  }
  EXPECT_EQ(*c.recall_at_full, 1.0);
}

TEST(PrCurve, PerfectPredictor) {
  auto [r, t] = singletons({true, true, true});
  auto c = pr_curve(r, t);
  EXPECT_EQ(c.points.back().precision, 1.0);
  EXPECT_EQ(c.points.back().recall, 1.0);
}

TEST(PrCurve, TieGroupIsAtomic) {
  RankedList r;
  r.groups.push_back({1.0, {NodePair::of(0, 1), NodePair::of(0, 2)}});
  GroundTruth t;
  t.positives.push_back(NodePair::of(0, 2));
  auto c = pr_curve(r, t);
  ASSERT_EQ(c.points.size(), 1u);
  EXPECT_EQ(c.points[0].precision, 0.5);
  EXPECT_EQ(c.points[0].recall, 1.0);
}

TEST(PrCurve, NoPositivesMeansNoPoints) {
  auto [r, t] = singletons({false, false});
  auto c = pr_curve(r, t);
  EXPECT_TRUE(c.points.empty());
  EXPECT_FALSE(c.recall_at_full);
}

TEST(PrCurve, NothingRetrievedHasZeroRecall) {
  GroundTruth t;
  t.positives.push_back(NodePair::of(0, 1));
  auto c = pr_curve(RankedList{}, t);
  EXPECT_TRUE(c.points.empty());
  EXPECT_EQ(*c.recall_at_full, 0.0);
}

TEST(OverallCoverage, Examples) {
  LinkCensus c;
  c.counts = {1, 1, 2, 0};
  EXPECT_DOUBLE_EQ(overall_coverage(1.0, c), 0.25);
  EXPECT_DOUBLE_EQ(overall_coverage(0.0, c), 0.0);
  EXPECT_DOUBLE_EQ(overall_coverage(0.10, c), 0.025);
  LinkCensus empty;
  empty.counts = {0, 0, 0, 3};
  EXPECT_THROW(overall_coverage(1.0, empty), Error);
}

TEST(PerfectRanking, RecallIsCandidateCoverage) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    auto corpus = testsupport::random_corpus(rng, 60, 2000, 2001, 25);
    auto past = build_graph(corpus, Window(2000, 2000));
    auto present = build_graph(corpus, Window(2001, 2001));
    auto truth = ground_truth_type_b(past, present);
    auto candidates = candidate_pairs(past);
    auto c = pr_curve(perfect_ranking(truth, candidates), truth);
    if (truth.positives.empty()) {
      EXPECT_FALSE(c.recall_at_full);
      continue;
    }
    std::size_t covered = 0;
    for (auto p : truth.positives)
      covered += std::binary_search(candidates.begin(), candidates.end(), p) ? 1 : 0;
    EXPECT_EQ(*c.recall_at_full,
              static_cast<double>(covered) / static_cast<double>(truth.positives.size()));
    if (covered > 0) EXPECT_EQ(c.points.front().precision, 1.0);
  }
}

// Property: recall never decreases, k strictly increases, the last point carries
// recall_at_full, and shuffling pairs inside groups changes nothing.
TEST(EvaluationProperties, CurveShape) {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 150; ++trial) {
    auto corpus = testsupport::random_corpus(rng, 60, 2000, 2003, 25);
    FramePair frame(Window(2000, 2001), Window(2002, 2003));
    for (auto kind : {Predictor::adamic_adar, Predictor::degree_product, Predictor::common_neighbors}) {
      auto e = evaluate_frame(corpus, frame, kind);
      const auto& pts = e.curve.points;
      for (std::size_t i = 1; i < pts.size(); ++i) {
        EXPECT_GE(pts[i].recall, pts[i - 1].recall);
        EXPECT_GT(pts[i].cumulative_k, pts[i - 1].cumulative_k);
      }
      if (!pts.empty()) EXPECT_EQ(pts.back().recall, *e.curve.recall_at_full);
      EXPECT_LE(e.curve.retrieved_positives, e.curve.positives);

      auto past = build_graph(corpus, frame.past());
      auto truth = ground_truth_type_b(past, build_graph(corpus, frame.present()));
      for (auto p : truth.positives) {
        EXPECT_FALSE(past.has_edge(p.u, p.v));
      }
      auto ranked = rank(kind, past);
      for (auto& g : ranked.groups) std::shuffle(g.pairs.begin(), g.pairs.end(), rng);
      auto shuffled = pr_curve(ranked, truth);
      ASSERT_EQ(shuffled.points.size(), pts.size());
      for (std::size_t i = 0; i < pts.size(); ++i) {
        EXPECT_EQ(shuffled.points[i].precision, pts[i].precision);
        EXPECT_EQ(shuffled.points[i].recall, pts[i].recall);
      }
    }
  }
}

TEST(PrCsv, Headers) {
  std::vector<PublicationRecord> rs{{"a", 2000, {"A", "B"}}, {"b", 2000, {"B", "C"}},
                                    {"c", 2001, {"A", "C"}}};
  Corpus corpus(rs);
  auto evals = evaluate_frames(corpus, {FramePair(Window(2000, 2000), Window(2001, 2001))},
                               Predictor::adamic_adar);
  std::ostringstream curve, summary;
  write_pr_csv(curve, evals);
  write_pr_summary_csv(summary, evals);
  EXPECT_EQ(curve.str(),
            "predictor,past_start,past_end,present_start,present_end,cum_k,precision,recall\n"
            "adamic-adar,2000,2000,2001,2001,1,1.000000,1.000000\n");
  EXPECT_EQ(summary.str(),
            "predictor,past_start,past_end,present_start,present_end,positives,candidates,"
            "retrieved_positives,ratio_B,recall_at_full,overall_coverage\n"
            "adamic-adar,2000,2000,2001,2001,1,1,1,1.000000,1.000000,1.000000\n");
}
