#pragma once

// Reproducible synthetic coauthorship corpora with a controllable mix of
// link-formation types. The generator labels every author pair it emits
// with the type it intended relative to the preceding `memory_years` years,
// which is what the census reports for frames whose past window has that
// length.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "linkbounds/census.hpp"
#include "linkbounds/corpus.hpp"
#include "linkbounds/error.hpp"
#include "linkbounds/windowing.hpp"

namespace linkbounds {

struct SynthConfig {
  std::uint64_t seed = 0;
  Window years{2000, 2004};
  std::size_t papers_per_year = 100;
  // Categorical team-size distribution: (authors, weight).
  std::vector<std::pair<std::size_t, double>> team_sizes{{2, 1.0}};
  // Per co-author slot: repeat a recent collaboration of the anchor author
  // (Type A), pair the anchor with a recent author it has not worked with
  // (Type B), otherwise bring in a newcomer (Type C).
  double p_repeat = 0.25;
  double p_existing_new_pair = 0.25;
  // Horizon, in years, of "recent" authors and collaborations.
  int memory_years = 1;
  // When set, at least this fraction of each year's Type-B pairs is planted
  // between authors without a common recent neighbor; the rest close a
  // recent wedge when one can be found.
  std::optional<double> b_without_common_neighbor;

  void validate() const {
    auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (papers_per_year < 1) throw ConfigError("papers_per_year must be >= 1");
    if (!prob(p_repeat) || !prob(p_existing_new_pair) || p_repeat + p_existing_new_pair > 1.0)
      throw ConfigError("p_repeat and p_existing_new_pair must be probabilities with sum <= 1");
    if (memory_years < 1) throw ConfigError("memory_years must be >= 1");
    if (b_without_common_neighbor && !prob(*b_without_common_neighbor))
      throw ConfigError("b_without_common_neighbor must lie in [0, 1]");
    if (team_sizes.empty()) throw ConfigError("team size distribution is empty");
    double total = 0.0;
    for (auto [k, w] : team_sizes) {
      if (k < 2) throw ConfigError("team sizes must be >= 2");
      if (!(w >= 0.0) || !std::isfinite(w)) throw ConfigError("team size weights must be >= 0");
      total += w;
    }
    if (!(total > 0.0)) throw ConfigError("team size weights sum to zero");
  }
};

struct IntentLabel {
  int year = 0;
  std::string author_u;  // author_u < author_v
  std::string author_v;
  LinkType intended = LinkType::D;
};

struct SynthResult {
  Corpus corpus;
  std::vector<IntentLabel> intents;
  std::size_t fallbacks = 0;  // requested A/B slots filled with a newcomer instead
  std::size_t b_without_common_neighbor = 0;
  std::size_t b_with_common_neighbor = 0;
};

namespace detail {

inline std::string synth_author_name(std::uint32_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "a%07u", i);
  return buf;
}

inline std::uint64_t synth_key(std::uint32_t a, std::uint32_t b) {
  if (a > b) std::swap(a, b);
  return (std::uint64_t{a} << 32) | b;
}

class CorpusGenerator {
 public:
  explicit CorpusGenerator(const SynthConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {
    std::vector<double> w;
    for (auto [k, weight] : cfg.team_sizes) {
      sizes_.push_back(k);
      w.push_back(weight);
    }
    team_size_ = std::discrete_distribution<std::size_t>(w.begin(), w.end());
  }

  SynthResult run() {
    const int y0 = cfg_.years.start_year();
    const int years = cfg_.years.length();
    authors_by_year_.resize(static_cast<std::size_t>(years));
    edges_by_year_.resize(static_cast<std::size_t>(years));
    for (int yi = 0; yi < years; ++yi) generate_year(y0 + yi, yi);
    SynthResult out{Corpus(std::move(records_), cfg_.years.start_year(), cfg_.years.end_year(),
                           "synth seed=" + std::to_string(cfg_.seed)),
                    std::move(intents_), fallbacks_, b_nocn_total_, b_cn_total_};
    return out;
  }

 private:
  enum class Role { repeat, existing, newcomer };

  struct Slot {
    Role role;
    bool without_common = false;  // for Role::existing under quota control
  };

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng_)];
  }

  std::uint32_t newcomer() { return next_author_++; }

  bool recent(std::uint32_t a) const { return recent_set_.contains(a); }
  bool recently_linked(std::uint32_t a, std::uint32_t b) const {
    return recent_edges_.contains(synth_key(a, b));
  }
  const std::vector<std::uint32_t>& recent_partners(std::uint32_t a) const {
    static const std::vector<std::uint32_t> none;
    auto it = recent_adj_.find(a);
    return it == recent_adj_.end() ? none : it->second;
  }
  bool share_recent_neighbor(std::uint32_t a, std::uint32_t b) const {
    const auto& na = recent_partners(a);
    const auto& nb = recent_partners(b);
    for (std::size_t i = 0, j = 0; i < na.size() && j < nb.size();) {
      if (na[i] == nb[j]) return true;
      (na[i] < nb[j]) ? ++i : ++j;
    }
    return false;
  }

  void load_recent(int yi) {
    recent_set_.clear();
    recent_authors_.clear();
    recent_edges_.clear();
    recent_adj_.clear();
    recent_edge_list_.clear();
    for (int r = std::max(0, yi - cfg_.memory_years); r < yi; ++r) {
      for (auto a : authors_by_year_[static_cast<std::size_t>(r)])
        if (recent_set_.insert(a).second) recent_authors_.push_back(a);
      for (auto [a, b] : edges_by_year_[static_cast<std::size_t>(r)])
        if (recent_edges_.insert(synth_key(a, b)).second) {
          recent_edge_list_.emplace_back(a, b);
          recent_adj_[a].push_back(b);
          recent_adj_[b].push_back(a);
        }
    }
    std::sort(recent_authors_.begin(), recent_authors_.end());
    std::sort(recent_edge_list_.begin(), recent_edge_list_.end());
    wedge_centers_.clear();
    for (auto& [a, adj] : recent_adj_) {
      std::sort(adj.begin(), adj.end());
      if (adj.size() >= 2) wedge_centers_.push_back(a);
    }
    std::sort(wedge_centers_.begin(), wedge_centers_.end());
    unused_edges_ = recent_edge_list_;
  }

  // A recent edge not yet repeated this year, removed from the pool.
  std::optional<std::pair<std::uint32_t, std::uint32_t>> take_unused_edge() {
    while (!unused_edges_.empty()) {
      auto i = std::uniform_int_distribution<std::size_t>(0, unused_edges_.size() - 1)(rng_);
      auto e = unused_edges_[i];
      unused_edges_[i] = unused_edges_.back();
      unused_edges_.pop_back();
      if (!used_.contains(synth_key(e.first, e.second))) return e;
    }
    return std::nullopt;
  }

  bool usable(std::uint32_t anchor, std::uint32_t w, const std::vector<std::uint32_t>& team) const {
    return w != anchor && std::find(team.begin(), team.end(), w) == team.end() &&
           !used_.contains(synth_key(anchor, w));
  }

  std::optional<std::uint32_t> find_repeat(std::uint32_t anchor,
                                           const std::vector<std::uint32_t>& team) {
    std::vector<std::uint32_t> options;
    for (auto w : recent_partners(anchor))
      if (usable(anchor, w, team)) options.push_back(w);
    if (options.empty()) return std::nullopt;
    return pick(options);
  }

  std::optional<std::uint32_t> find_existing(std::uint32_t anchor,
                                             const std::vector<std::uint32_t>& team,
                                             std::optional<bool> want_common) {
    constexpr int kTries = 64;
    for (int t = 0; t < kTries; ++t) {
      std::uint32_t w;
      if (want_common == true) {
        const auto& nz = recent_partners(anchor);
        if (nz.empty()) return std::nullopt;
        const auto& nw = recent_partners(pick(nz));
        w = pick(nw);
      } else {
        w = pick(recent_authors_);
      }
      if (!usable(anchor, w, team) || recently_linked(anchor, w)) continue;
      if (want_common == false && share_recent_neighbor(anchor, w)) continue;
      return w;
    }
    return std::nullopt;
  }

  LinkType bookkeeping_type(std::uint32_t a, std::uint32_t b) const {
    bool ra = recent(a), rb = recent(b);
    if (ra && rb) return recently_linked(a, b) ? LinkType::A : LinkType::B;
    return (ra || rb) ? LinkType::C : LinkType::D;
  }

  void generate_year(int year, int yi) {
    load_recent(yi);
    used_.clear();
    std::size_t b_total = 0, b_nocn = 0;
    const auto f = cfg_.b_without_common_neighbor;
    auto& year_authors = authors_by_year_[static_cast<std::size_t>(yi)];
    auto& year_edges = edges_by_year_[static_cast<std::size_t>(yi)];

    for (std::size_t p = 0; p < cfg_.papers_per_year; ++p) {
      const std::size_t k = sizes_[team_size_(rng_)];
      std::vector<std::uint32_t> team;
      std::vector<std::pair<std::size_t, LinkType>> anchor_labels;  // (team index, type)

      if (recent_authors_.empty()) {
        for (std::size_t i = 0; i < k; ++i) team.push_back(newcomer());
      } else {
        std::vector<Slot> slots;
        for (std::size_t i = 1; i < k; ++i) {
          double u = uniform();
          if (u < cfg_.p_repeat)
            slots.push_back({Role::repeat});
          else if (u < cfg_.p_repeat + cfg_.p_existing_new_pair)
            slots.push_back({Role::existing});
          else
            slots.push_back({Role::newcomer});
        }
        bool any_repeat = std::any_of(slots.begin(), slots.end(),
                                      [](const Slot& s) { return s.role == Role::repeat; });
        bool any_wedge = f && std::any_of(slots.begin(), slots.end(), [](const Slot& s) {
          return s.role == Role::existing;
        });

        std::uint32_t anchor;
        std::optional<std::uint32_t> first_partner;
        if (any_repeat) {
          if (auto e = take_unused_edge()) {
            bool flip = uniform() < 0.5;
            anchor = flip ? e->second : e->first;
            first_partner = flip ? e->first : e->second;
          } else {
            anchor = pick(recent_authors_);
          }
        } else if (any_wedge && !wedge_centers_.empty()) {
          anchor = pick(recent_partners(pick(wedge_centers_)));
        } else {
          anchor = pick(recent_authors_);
        }
        team.push_back(anchor);

        for (auto& slot : slots) {
          std::optional<std::uint32_t> member;
          LinkType type = LinkType::C;
          if (slot.role == Role::repeat) {
            if (first_partner && usable(anchor, *first_partner, team)) {
              member = first_partner;
              first_partner.reset();
            } else {
              member = find_repeat(anchor, team);
            }
            type = LinkType::A;
          } else if (slot.role == Role::existing) {
            std::optional<bool> want_common;
            if (f) want_common = static_cast<double>(b_nocn) >= *f * static_cast<double>(b_total + 1);
            member = find_existing(anchor, team, want_common);
            if (!member && want_common == true) {
              // Planting above the quota keeps the Type-B share.
              want_common = false;
              member = find_existing(anchor, team, want_common);
            }
            type = LinkType::B;
            if (member) {
              ++b_total;
              if (want_common == false) {
                ++b_nocn;
                ++b_nocn_total_;
              } else if (want_common == true) {
                ++b_cn_total_;
              }
            }
          }
          if (!member) {
            if (slot.role != Role::newcomer) ++fallbacks_;
            member = newcomer();
            type = LinkType::C;
          }
          anchor_labels.emplace_back(team.size(), type);
          team.push_back(*member);
        }
      }

      PublicationRecord rec;
      rec.paper_id = "p" + std::to_string(records_.size() + 1);
      rec.year = year;
      for (auto a : team) {
        rec.authors.push_back(synth_author_name(a));
        year_authors.push_back(a);
      }
      records_.push_back(std::move(rec));

      for (std::size_t i = 0; i < team.size(); ++i)
        for (std::size_t j = i + 1; j < team.size(); ++j) {
          LinkType type;
          if (i == 0 && !recent_authors_.empty()) {
            type = std::find_if(anchor_labels.begin(), anchor_labels.end(),
                                [&](const auto& l) { return l.first == j; })
                       ->second;
          } else {
            type = bookkeeping_type(team[i], team[j]);
          }
          auto a = std::min(team[i], team[j]);
          auto b = std::max(team[i], team[j]);
          intents_.push_back({year, synth_author_name(a), synth_author_name(b), type});
          if (used_.insert(synth_key(a, b)).second) year_edges.emplace_back(a, b);
        }
    }
    std::sort(year_authors.begin(), year_authors.end());
    year_authors.erase(std::unique(year_authors.begin(), year_authors.end()), year_authors.end());
  }

  const SynthConfig& cfg_;
  std::mt19937_64 rng_;
  std::vector<std::size_t> sizes_;
  std::discrete_distribution<std::size_t> team_size_;
  std::uint32_t next_author_ = 1;

  std::vector<std::vector<std::uint32_t>> authors_by_year_;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> edges_by_year_;

  std::unordered_set<std::uint32_t> recent_set_;
  std::vector<std::uint32_t> recent_authors_;
  std::unordered_set<std::uint64_t> recent_edges_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> recent_edge_list_;
  std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> recent_adj_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> unused_edges_;
  std::vector<std::uint32_t> wedge_centers_;  // recent authors with >= 2 recent partners
  std::unordered_set<std::uint64_t> used_;  // pairs already emitted this year

  std::vector<PublicationRecord> records_;
  std::vector<IntentLabel> intents_;
  std::size_t fallbacks_ = 0;
  std::size_t b_nocn_total_ = 0;
  std::size_t b_cn_total_ = 0;
};

}  // namespace detail

inline SynthResult generate_corpus(const SynthConfig& config) {
  config.validate();
  return detail::CorpusGenerator(config).run();
}

/// `{"year":..,"author_u":..,"author_v":..,"intended_type":"A"}` per line.
inline void write_intents_jsonl(std::ostream& out, const std::vector<IntentLabel>& intents) {
  for (const auto& l : intents) {
    nlohmann::ordered_json obj;
    obj["year"] = l.year;
    obj["author_u"] = l.author_u;
    obj["author_v"] = l.author_v;
    obj["intended_type"] = std::string(1, to_char(l.intended));
    out << obj.dump() << '\n';
  }
}

}  // namespace linkbounds
