#pragma once

// Longitudinal bibliographic corpus: parsing, validation, team-size filtering.

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "linkbounds/error.hpp"

namespace linkbounds {

struct PublicationRecord {
  std::string paper_id;
  int year = 0;
  std::vector<std::string> authors;

  friend bool operator==(const PublicationRecord&, const PublicationRecord&) = default;
};

/// An immutable, validated set of publication records.
///
/// Every record has a non-empty author list without repeats, paper ids are
/// unique, and every year lies in [year_min, year_max].
class Corpus {
 public:
  /// Year range computed from the records.
  explicit Corpus(std::vector<PublicationRecord> records, std::string provenance = {})
      : records_(std::move(records)), provenance_(std::move(provenance)) {
    if (records_.empty()) throw Error("empty corpus");
    auto [lo, hi] = std::minmax_element(
        records_.begin(), records_.end(),
        [](const auto& a, const auto& b) { return a.year < b.year; });
    year_min_ = lo->year;
    year_max_ = hi->year;
    validate();
  }

  /// Declared year range; every record must fall inside it.
  Corpus(std::vector<PublicationRecord> records, int year_min, int year_max,
         std::string provenance = {})
      : records_(std::move(records)),
        year_min_(year_min),
        year_max_(year_max),
        provenance_(std::move(provenance)) {
    if (records_.empty()) throw Error("empty corpus");
    if (year_min_ > year_max_) throw Error("corpus year range is inverted");
    validate();
  }

  const std::vector<PublicationRecord>& records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }
  int year_min() const noexcept { return year_min_; }
  int year_max() const noexcept { return year_max_; }
  const std::string& provenance() const noexcept { return provenance_; }

  friend bool operator==(const Corpus& a, const Corpus& b) {
    return a.year_min_ == b.year_min_ && a.year_max_ == b.year_max_ &&
           a.records_ == b.records_;
  }

 private:
  void validate() const {
    std::unordered_set<std::string_view> ids;
    ids.reserve(records_.size());
    for (const auto& r : records_) {
      if (r.authors.empty()) throw Error("record '" + r.paper_id + "' has no authors");
      if (r.year < year_min_ || r.year > year_max_)
        throw Error("record '" + r.paper_id + "' lies outside the corpus year range");
      if (!ids.insert(r.paper_id).second)
        throw Error("duplicate paper_id '" + r.paper_id + "'");
      std::unordered_set<std::string_view> seen;
      for (const auto& a : r.authors) {
        if (a.empty()) throw Error("record '" + r.paper_id + "' has an empty author id");
        if (!seen.insert(a).second)
          throw Error("record '" + r.paper_id + "' repeats author '" + a + "'");
      }
    }
  }

  std::vector<PublicationRecord> records_;
  int year_min_ = 0;
  int year_max_ = 0;
  std::string provenance_;
};

struct IngestConfig {
  std::optional<std::size_t> max_authors;  // nullopt = unlimited
  bool dedupe_author_within_paper = true;

  void validate() const {
    if (max_authors && *max_authors < 2)
      throw ConfigError("max_authors must be at least 2");
  }
};

enum class RecordFormat { jsonl, tsv };

inline RecordFormat parse_record_format(std::string_view name) {
  if (name == "jsonl") return RecordFormat::jsonl;
  if (name == "tsv") return RecordFormat::tsv;
  throw ConfigError("unknown record format '" + std::string(name) + "' (expected jsonl or tsv)");
}

struct ParseReport {
  std::size_t lines_read = 0;
  std::size_t duplicate_authors_removed = 0;
  std::size_t empty_author_records = 0;
  std::vector<std::size_t> duplicate_id_lines;  // later occurrences, dropped
};

struct ParseResult {
  Corpus corpus;
  ParseReport report;
};

namespace detail {

inline std::optional<int> parse_year(std::string_view text) {
  int year = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, year);
  if (ec != std::errc() || ptr != last || text.empty()) return std::nullopt;
  return year;
}

inline PublicationRecord parse_tsv_line(std::string_view line, std::size_t lineno) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    auto tab = line.find('\t', pos);
    fields.push_back(line.substr(pos, tab == std::string_view::npos ? tab : tab - pos));
    if (tab == std::string_view::npos) break;
    pos = tab + 1;
  }
  if (fields.size() < 2) throw ParseError(lineno, "expected paper_id<TAB>year[<TAB>author...]");
  if (fields[0].empty()) throw ParseError(lineno, "empty paper_id");
  auto year = parse_year(fields[1]);
  if (!year) throw ParseError(lineno, "year is not an integer");
  PublicationRecord rec{std::string(fields[0]), *year, {}};
  for (std::size_t i = 2; i < fields.size(); ++i) {
    if (fields[i].empty()) throw ParseError(lineno, "empty author id");
    rec.authors.emplace_back(fields[i]);
  }
  return rec;
}

inline PublicationRecord parse_jsonl_line(std::string_view line, std::size_t lineno) {
  nlohmann::json obj;
  try {
    obj = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(lineno, std::string("invalid JSON: ") + e.what());
  }
  if (!obj.is_object()) throw ParseError(lineno, "expected a JSON object");
  auto id = obj.find("paper_id");
  auto year = obj.find("year");
  auto authors = obj.find("authors");
  if (id == obj.end() || !id->is_string()) throw ParseError(lineno, "paper_id must be a string");
  if (year == obj.end() || !year->is_number_integer())
    throw ParseError(lineno, "year must be an integer");
  if (authors == obj.end() || !authors->is_array())
    throw ParseError(lineno, "authors must be an array of strings");
  PublicationRecord rec{id->get<std::string>(), year->get<int>(), {}};
  if (rec.paper_id.empty()) throw ParseError(lineno, "empty paper_id");
  for (const auto& a : *authors) {
    if (!a.is_string()) throw ParseError(lineno, "authors must be an array of strings");
    auto s = a.get<std::string>();
    if (s.empty()) throw ParseError(lineno, "empty author id");
    rec.authors.push_back(std::move(s));
  }
  return rec;
}

}  // namespace detail

/// Parses a line-oriented record stream. Blank lines are skipped; malformed
/// lines throw ParseError with their line number.
inline ParseResult parse_records(std::istream& in, RecordFormat format,
                                 const IngestConfig& config = {},
                                 std::string provenance = {}) {
  config.validate();
  ParseReport report;
  std::vector<PublicationRecord> records;
  std::unordered_set<std::string> ids;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    ++report.lines_read;
    auto rec = format == RecordFormat::jsonl ? detail::parse_jsonl_line(line, lineno)
                                             : detail::parse_tsv_line(line, lineno);

    std::vector<std::string> unique;
    unique.reserve(rec.authors.size());
    for (auto& a : rec.authors) {
      if (std::find(unique.begin(), unique.end(), a) != unique.end()) {
        if (!config.dedupe_author_within_paper)
          throw ParseError(lineno, "author '" + a + "' repeated within paper");
        ++report.duplicate_authors_removed;
        continue;
      }
      unique.push_back(std::move(a));
    }
    rec.authors = std::move(unique);

    if (rec.authors.empty()) {
      ++report.empty_author_records;
      continue;
    }
    if (!ids.insert(rec.paper_id).second) {
      report.duplicate_id_lines.push_back(lineno);
      continue;
    }
    records.push_back(std::move(rec));
  }
  if (records.empty()) throw Error("empty corpus");
  return {Corpus(std::move(records), std::move(provenance)), std::move(report)};
}

inline void write_jsonl(std::ostream& out, const Corpus& corpus) {
  for (const auto& r : corpus.records()) {
    nlohmann::ordered_json obj;
    obj["paper_id"] = r.paper_id;
    obj["year"] = r.year;
    obj["authors"] = r.authors;
    out << obj.dump() << '\n';
  }
}

inline void write_tsv(std::ostream& out, const Corpus& corpus) {
  auto check = [](const std::string& s) {
    if (s.find_first_of("\t\r\n") != std::string::npos)
      throw Error("identifier '" + s + "' cannot be written as TSV");
    return std::string_view(s);
  };
  for (const auto& r : corpus.records()) {
    out << check(r.paper_id) << '\t' << r.year;
    for (const auto& a : r.authors) out << '\t' << check(a);
    out << '\n';
  }
}

struct FilterResult {
  Corpus corpus;
  double retention_ratio = 1.0;
};

/// Keeps the records whose author count is at most config.max_authors. The
/// declared year range of the input is preserved.
inline FilterResult filter_by_team_size(const Corpus& corpus, const IngestConfig& config) {
  config.validate();
  if (!config.max_authors) return {corpus, 1.0};
  std::vector<PublicationRecord> kept;
  kept.reserve(corpus.size());
  for (const auto& r : corpus.records())
    if (r.authors.size() <= *config.max_authors) kept.push_back(r);
  if (kept.empty()) throw Error("empty corpus after filtering");
  double ratio = static_cast<double>(kept.size()) / static_cast<double>(corpus.size());
  return {Corpus(std::move(kept), corpus.year_min(), corpus.year_max(), corpus.provenance()),
          ratio};
}

struct CorpusStats {
  std::size_t papers = 0;
  std::size_t distinct_authors = 0;
  std::map<int, std::size_t> papers_per_year;
  std::map<std::size_t, std::size_t> team_sizes;  // authors per paper -> papers
};

inline CorpusStats corpus_stats(const Corpus& corpus) {
  CorpusStats stats;
  std::unordered_set<std::string_view> authors;
  for (const auto& r : corpus.records()) {
    ++stats.papers;
    ++stats.papers_per_year[r.year];
    ++stats.team_sizes[r.authors.size()];
    for (const auto& a : r.authors) authors.insert(a);
  }
  stats.distinct_authors = authors.size();
  return stats;
}

}  // namespace linkbounds
