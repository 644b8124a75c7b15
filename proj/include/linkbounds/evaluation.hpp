#pragma once

// Recall-precision evaluation of ranked predictions against Type-B links.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <unordered_set>
#include <vector>

#include "linkbounds/census.hpp"
#include "linkbounds/corpus.hpp"
#include "linkbounds/csv.hpp"
#include "linkbounds/graph.hpp"
#include "linkbounds/parallel.hpp"
#include "linkbounds/predictors.hpp"
#include "linkbounds/windowing.hpp"

namespace linkbounds {

/// Type-B links of the present graph, as pairs of past-graph node ids.
struct GroundTruth {
  std::optional<FramePair> frame;
  std::vector<NodePair> positives;  // sorted
};

struct PRPoint {
  std::size_t cumulative_k = 0;
  double precision = 0.0;
  double recall = 0.0;
};

struct PRCurve {
  Predictor predictor = Predictor::adamic_adar;
  std::optional<FramePair> frame;
  std::vector<PRPoint> points;
  std::optional<double> recall_at_full;  // absent when there are no positives
  std::size_t positives = 0;
  std::size_t retrieved_positives = 0;
  std::size_t retrieved = 0;
};

inline GroundTruth ground_truth_type_b(const CoauthorGraph& past, const CoauthorGraph& present) {
  GroundTruth truth;
  if (present.window().start_year() == past.window().end_year() + 1)
    truth.frame.emplace(past.window(), present.window());
  for (const auto& e : present.edges()) {
    const auto& u = present.id(e.u);
    const auto& v = present.id(e.v);
    if (classify_link(past, u, v) == LinkType::B)
      truth.positives.push_back(NodePair::of(past.at(u), past.at(v)));
  }
  std::sort(truth.positives.begin(), truth.positives.end());
  return truth;
}

/// One point per tie-group boundary. Groups are retrieved whole, so the
/// curve does not depend on the order of pairs inside a group.
inline PRCurve pr_curve(const RankedList& ranked, const GroundTruth& truth) {
  PRCurve curve;
  curve.predictor = ranked.kind;
  curve.frame = truth.frame;
  curve.positives = truth.positives.size();
  std::unordered_set<NodePair, NodePairHash> positives(truth.positives.begin(),
                                                      truth.positives.end());
  std::size_t hits = 0;
  std::size_t k = 0;
  for (const auto& group : ranked.groups) {
    for (const auto& p : group.pairs) hits += positives.count(p);
    k += group.pairs.size();
    if (!positives.empty() && !group.pairs.empty())
      curve.points.push_back({k, static_cast<double>(hits) / static_cast<double>(k),
                              static_cast<double>(hits) / static_cast<double>(positives.size())});
  }
  curve.retrieved = k;
  curve.retrieved_positives = hits;
  if (!positives.empty())
    curve.recall_at_full = static_cast<double>(hits) / static_cast<double>(positives.size());
  return curve;
}

/// Ranking that knows the answer: positives among the candidates form the
/// first group, the remaining candidates the second.
inline RankedList perfect_ranking(const GroundTruth& truth,
                                  const std::vector<NodePair>& candidates) {
  std::unordered_set<NodePair, NodePairHash> positives(truth.positives.begin(),
                                                      truth.positives.end());
  TieGroup hit{1.0, {}};
  TieGroup miss{0.0, {}};
  for (const auto& p : candidates) (positives.contains(p) ? hit : miss).pairs.push_back(p);
  RankedList out;
  for (auto* g : {&hit, &miss})
    if (!g->pairs.empty()) {
      std::sort(g->pairs.begin(), g->pairs.end());
      out.groups.push_back(std::move(*g));
    }
  return out;
}

/// Fraction of all Type A+B+C links a Type-B predictor accounts for.
inline double overall_coverage(double recall_at_full, const LinkCensus& census) {
  auto ratio_b = census.ratio(LinkType::B);
  if (!ratio_b) throw Error("census ratios are undefined (no Type A, B or C links)");
  return recall_at_full * *ratio_b;
}

struct FrameEvaluation {
  PRCurve curve;
  LinkCensus census;
  std::size_t candidates = 0;
  std::optional<double> coverage;
};

inline FrameEvaluation evaluate_frame(const Corpus& corpus, const FramePair& frame,
                                      Predictor predictor, bool include_solo_authors = true) {
  auto past = build_graph(corpus, frame.past(), include_solo_authors);
  auto present = build_graph(corpus, frame.present(), include_solo_authors);
  FrameEvaluation out;
  out.census = census(past, present);
  out.census.frame = frame;
  auto ranked = rank(predictor, past);
  out.candidates = ranked.pair_count();
  auto truth = ground_truth_type_b(past, present);
  truth.frame = frame;
  out.curve = pr_curve(ranked, truth);
  if (out.curve.recall_at_full && out.census.eligible() > 0)
    out.coverage = overall_coverage(*out.curve.recall_at_full, out.census);
  return out;
}

inline std::vector<FrameEvaluation> evaluate_frames(const Corpus& corpus,
                                                    const std::vector<FramePair>& frames,
                                                    Predictor predictor,
                                                    bool include_solo_authors = true,
                                                    unsigned jobs = 1) {
  return parallel_map(frames.size(), jobs, [&](std::size_t i) {
    return evaluate_frame(corpus, frames[i], predictor, include_solo_authors);
  });
}

namespace detail {
inline void write_frame_cells(std::ostream& out, const std::optional<FramePair>& frame) {
  if (!frame) throw Error("curve without a frame cannot be written");
  out << frame->past().start_year() << ',' << frame->past().end_year() << ','
      << frame->present().start_year() << ',' << frame->present().end_year();
}
}  // namespace detail

/// `predictor,past_start,past_end,present_start,present_end,cum_k,precision,recall`
inline void write_pr_csv(std::ostream& out, const std::vector<FrameEvaluation>& evals) {
  out << "predictor,past_start,past_end,present_start,present_end,cum_k,precision,recall\n";
  for (const auto& e : evals)
    for (const auto& p : e.curve.points) {
      out << to_string(e.curve.predictor) << ',';
      detail::write_frame_cells(out, e.curve.frame);
      out << ',' << p.cumulative_k << ',' << csv::fixed(p.precision, 6) << ','
          << csv::fixed(p.recall, 6) << '\n';
    }
}

/// One summary row per frame; absent values are empty cells.
inline void write_pr_summary_csv(std::ostream& out, const std::vector<FrameEvaluation>& evals) {
  out << "predictor,past_start,past_end,present_start,present_end,positives,candidates,"
         "retrieved_positives,ratio_B,recall_at_full,overall_coverage\n";
  for (const auto& e : evals) {
    out << to_string(e.curve.predictor) << ',';
    detail::write_frame_cells(out, e.curve.frame);
    out << ',' << e.curve.positives << ',' << e.candidates << ',' << e.curve.retrieved_positives
        << ',' << csv::fixed(e.census.ratio(LinkType::B), 6) << ','
        << csv::fixed(e.curve.recall_at_full, 6) << ',' << csv::fixed(e.coverage, 6) << '\n';
  }
}

}  // namespace linkbounds
