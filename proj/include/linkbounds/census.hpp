#pragma once

// Link-formation census: every present link is Type A, B, C or D relative to
// the past graph.
//
//   A  both endpoints in the past graph, already linked there (sustained)
//   B  both endpoints in the past graph, not linked there (new, predictable)
//   C  exactly one endpoint in the past graph (existing + newcomer)
//   D  neither endpoint in the past graph (two newcomers)
//
// Ratios are reported over A+B+C only; D is counted but excluded.

#include <array>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

#include "linkbounds/corpus.hpp"
#include "linkbounds/csv.hpp"
#include "linkbounds/graph.hpp"
#include "linkbounds/parallel.hpp"
#include "linkbounds/windowing.hpp"

namespace linkbounds {

enum class LinkType { A, B, C, D };

constexpr char to_char(LinkType t) noexcept { return "ABCD"[static_cast<int>(t)]; }

inline LinkType parse_link_type(std::string_view s) {
  if (s.size() == 1 && s[0] >= 'A' && s[0] <= 'D') return static_cast<LinkType>(s[0] - 'A');
  throw Error("unknown link type '" + std::string(s) + "'");
}

inline LinkType classify_link(const CoauthorGraph& past, std::string_view u, std::string_view v) {
  if (u == v) throw Error("cannot classify a link with identical endpoints");
  auto pu = past.find(u);
  auto pv = past.find(v);
  if (pu && pv) return past.has_edge(*pu, *pv) ? LinkType::A : LinkType::B;
  if (pu || pv) return LinkType::C;
  return LinkType::D;
}

struct LinkCensus {
  std::optional<FramePair> frame;
  std::array<std::size_t, 4> counts{};  // indexed by LinkType

  std::size_t count(LinkType t) const noexcept { return counts[static_cast<int>(t)]; }
  std::size_t eligible() const noexcept { return counts[0] + counts[1] + counts[2]; }
  std::size_t total() const noexcept { return eligible() + counts[3]; }

  /// count / (A+B+C); absent when A+B+C = 0. Type D has no ratio.
  std::optional<double> ratio(LinkType t) const {
    if (t == LinkType::D) throw Error("Type D links are excluded from ratios");
    if (eligible() == 0) return std::nullopt;
    return static_cast<double>(count(t)) / static_cast<double>(eligible());
  }
};

inline LinkCensus census(const CoauthorGraph& past, const CoauthorGraph& present) {
  LinkCensus out;
  if (present.window().start_year() == past.window().end_year() + 1)
    out.frame.emplace(past.window(), present.window());
  for (const auto& e : present.edges())
    ++out.counts[static_cast<int>(classify_link(past, present.id(e.u), present.id(e.v)))];
  return out;
}

/// One census row per frame, in frame order.
inline std::vector<LinkCensus> census_over_frames(const Corpus& corpus,
                                                  const std::vector<FramePair>& frames,
                                                  bool include_solo_authors = true,
                                                  unsigned jobs = 1) {
  return parallel_map(frames.size(), jobs, [&](std::size_t i) {
    const auto& f = frames[i];
    auto row = census(build_graph(corpus, f.past(), include_solo_authors),
                      build_graph(corpus, f.present(), include_solo_authors));
    row.frame = f;
    return row;
  });
}

inline void write_census_csv(std::ostream& out, const std::vector<LinkCensus>& rows) {
  out << "past_start,past_end,present_start,present_end,count_A,count_B,count_C,count_D,"
         "ratio_A,ratio_B,ratio_C\n";
  for (const auto& r : rows) {
    if (!r.frame) throw Error("census row without a frame cannot be written");
    const auto& f = *r.frame;
    out << f.past().start_year() << ',' << f.past().end_year() << ','
        << f.present().start_year() << ',' << f.present().end_year();
    for (auto c : r.counts) out << ',' << c;
    for (auto t : {LinkType::A, LinkType::B, LinkType::C}) out << ',' << csv::fixed(r.ratio(t), 6);
    out << '\n';
  }
}

}  // namespace linkbounds
