#pragma once

// Command-line pipeline: ingest, census, predict, evaluate, powerlaw, synth,
// report. Every subcommand writes its CSV/JSONL artifacts plus a
// <subcommand>_manifest.json into --out-dir.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "linkbounds/census.hpp"
#include "linkbounds/corpus.hpp"
#include "linkbounds/error.hpp"
#include "linkbounds/evaluation.hpp"
#include "linkbounds/graph.hpp"
#include "linkbounds/powerlaw.hpp"
#include "linkbounds/predictors.hpp"
#include "linkbounds/synth.hpp"
#include "linkbounds/windowing.hpp"

namespace linkbounds::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { ok = 0, input_error = 2, config_error = 3, data_error = 4 };

class MissingInput : public Error {
 public:
  using Error::Error;
};

inline std::set<int> parse_int_set(const std::string& text, const char* flag) {
  std::set<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto v = linkbounds::detail::parse_year(item);
    if (!v) throw ConfigError(std::string(flag) + ": '" + item + "' is not an integer");
    out.insert(*v);
  }
  if (out.empty()) throw ConfigError(std::string(flag) + " must list at least one value");
  return out;
}

/// "1995-1998" or "1995".
inline Window parse_window(const std::string& text, const char* flag) {
  auto dash = text.find('-', 1);
  auto a = linkbounds::detail::parse_year(text.substr(0, dash));
  auto b = dash == std::string::npos ? a : linkbounds::detail::parse_year(text.substr(dash + 1));
  if (!a || !b) throw ConfigError(std::string(flag) + ": expected YEAR or YEAR-YEAR, got '" + text + "'");
  return Window(*a, *b);
}

/// "2:0.6,3:0.4"
inline std::vector<std::pair<std::size_t, double>> parse_team_sizes(const std::string& text) {
  std::vector<std::pair<std::size_t, double>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    try {
      if (colon == std::string::npos) throw std::invalid_argument(item);
      out.emplace_back(std::stoul(item.substr(0, colon)), std::stod(item.substr(colon + 1)));
    } catch (const std::logic_error&) {
      throw ConfigError("--team-sizes: expected SIZE:WEIGHT items, got '" + item + "'");
    }
  }
  return out;
}

namespace detail {

struct Common {
  std::string input;
  std::string format = "jsonl";
  std::optional<std::size_t> max_authors;
  std::string out_dir = ".";
  unsigned jobs = 1;
  bool include_solo = true;
  std::string data_range;
};

struct Run {
  std::string subcommand;
  std::vector<std::string> argv;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<std::uint64_t> seeds;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::filesystem::path out_dir;

  std::ofstream open(const std::string& name) {
    std::filesystem::create_directories(out_dir);
    auto path = out_dir / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write output file '" + path.string() + "'");
    outputs.push_back(path.string());
    return f;
  }
};

inline void add_input_options(CLI::App& sub, Common& c) {
  sub.add_option("--input", c.input, "Corpus file (one record per line)")->required();
  sub.add_option("--format", c.format, "Record format: jsonl or tsv")->capture_default_str();
  sub.add_option("--max-authors", c.max_authors, "Drop papers with more authors than this");
  sub.add_option("--data-range", c.data_range, "Analysis year range YEAR-YEAR (default: corpus range)");
}

inline void add_output_options(CLI::App& sub, Common& c) {
  sub.add_option("--out-dir", c.out_dir, "Output directory")->capture_default_str();
  sub.add_option("--jobs", c.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
}

inline Corpus load_corpus(const Common& c, Run& run, ParseReport* report_out = nullptr,
                          double* retention = nullptr) {
  std::ifstream in(c.input, std::ios::binary);
  if (!in) throw MissingInput("cannot open input file '" + c.input + "'");
  run.inputs.push_back(c.input);
  IngestConfig cfg;
  cfg.max_authors = c.max_authors;
  auto parsed = parse_records(in, parse_record_format(c.format), cfg, c.input);
  auto filtered = filter_by_team_size(parsed.corpus, cfg);
  if (report_out) *report_out = parsed.report;
  if (retention) *retention = filtered.retention_ratio;
  run.config["format"] = c.format;
  run.config["max_authors"] = c.max_authors ? nlohmann::ordered_json(*c.max_authors) : nullptr;
  run.config["include_solo"] = c.include_solo;
  return std::move(filtered.corpus);
}

inline Window data_range(const Common& c, const Corpus& corpus) {
  return c.data_range.empty() ? Window(corpus.year_min(), corpus.year_max())
                              : parse_window(c.data_range, "--data-range");
}

inline void write_manifest(Run& run, double seconds) {
  nlohmann::ordered_json m;
  m["tool"] = "linkbounds";
  m["version"] = kVersion;
  m["subcommand"] = run.subcommand;
  m["argv"] = run.argv;
  m["inputs"] = run.inputs;
  m["config"] = run.config;
  m["seeds"] = run.seeds;
  auto manifest = (run.out_dir / (run.subcommand + "_manifest.json")).string();
  m["outputs"] = run.outputs;
  m["manifest"] = manifest;
  m["wall_clock_seconds"] = seconds;
  std::ofstream f(manifest, std::ios::binary);
  if (!f) throw Error("cannot write manifest '" + manifest + "'");
  f << m.dump(2) << '\n';
}

}  // namespace detail

/// Runs one subcommand. args[0] is the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  CLI::App app{"Formation-type census, link prediction bounds and degree power-law fits "
               "for temporal coauthorship corpora"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  detail::Common c;
  std::string past_lengths = "1,3,5", present_lengths = "1,3,5", window_lengths = "2,6,10";
  int slide = 1;
  std::string predictor_name = "adamic-adar";
  std::string past_window, present_window, edges_window;
  std::size_t n_boot = 1000, min_tail = 10;
  std::optional<std::uint64_t> seed;
  double log_base = std::numbers::e;
  SynthConfig synth;
  std::string synth_years = "2000-2004", team_sizes = "2:1";
  std::optional<double> b_without_cn;

  auto add_frames = [&](CLI::App* sub) {
    sub->add_option("--past-lengths", past_lengths, "Past window lengths, comma separated")
        ->capture_default_str();
    sub->add_option("--present-lengths", present_lengths, "Present window lengths, comma separated")
        ->capture_default_str();
    sub->add_option("--slide", slide, "Years between successive frames")->capture_default_str();
  };
  auto add_solo = [&](CLI::App* sub) {
    sub->add_option("--include-solo", c.include_solo,
                    "Keep single-author papers' authors as isolated nodes")
        ->capture_default_str();
  };
  auto add_bootstrap = [&](CLI::App* sub) {
    sub->add_option("--window-lengths", window_lengths, "Window lengths, comma separated")
        ->capture_default_str();
    sub->add_option("--n-boot", n_boot, "Bootstrap replicates (0 disables the p-value)")
        ->capture_default_str();
    sub->add_option("--seed", seed, "Bootstrap seed (required when --n-boot > 0)");
    sub->add_option("--min-tail", min_tail, "Minimum observations at or above x-min")
        ->capture_default_str();
  };

  auto* ingest = app.add_subcommand("ingest", "Validate, filter and summarize a corpus");
  detail::add_input_options(*ingest, c);
  detail::add_output_options(*ingest, c);
  ingest->add_option("--edges-window", edges_window, "Also export the coauthor edge list of YEAR-YEAR");
  add_solo(ingest);

  auto* census_cmd = app.add_subcommand("census", "Link-type census over past/present frames");
  detail::add_input_options(*census_cmd, c);
  detail::add_output_options(*census_cmd, c);
  add_frames(census_cmd);
  add_solo(census_cmd);

  auto* predict = app.add_subcommand("predict", "Rank candidate pairs of a past window");
  detail::add_input_options(*predict, c);
  detail::add_output_options(*predict, c);
  predict->add_option("--predictor", predictor_name, "adamic-adar, degree-product or common-neighbors")
      ->capture_default_str();
  predict->add_option("--past", past_window, "Past window YEAR-YEAR")->required();
  predict->add_option("--log-base", log_base, "Logarithm base of the Adamic-Adar weight");
  add_solo(predict);

  auto* evaluate = app.add_subcommand("evaluate", "Recall-precision curves against Type-B links");
  detail::add_input_options(*evaluate, c);
  detail::add_output_options(*evaluate, c);
  evaluate->add_option("--predictor", predictor_name, "adamic-adar, degree-product or common-neighbors")
      ->capture_default_str();
  evaluate->add_option("--past", past_window, "Past window YEAR-YEAR (single frame)");
  evaluate->add_option("--present", present_window, "Present window YEAR-YEAR (single frame)");
  add_frames(evaluate);
  add_solo(evaluate);

  auto* powerlaw = app.add_subcommand("powerlaw", "Power-law fits of degree distributions per window");
  detail::add_input_options(*powerlaw, c);
  detail::add_output_options(*powerlaw, c);
  add_bootstrap(powerlaw);
  powerlaw->add_option("--slide", slide, "Years between successive windows")->capture_default_str();
  add_solo(powerlaw);

  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic corpus with intent labels");
  synth_cmd->add_option("--seed", seed, "Generator seed")->required();
  synth_cmd->add_option("--years", synth_years, "Year range YEAR-YEAR")->capture_default_str();
  synth_cmd->add_option("--papers-per-year", synth.papers_per_year)->capture_default_str();
  synth_cmd->add_option("--team-sizes", team_sizes, "SIZE:WEIGHT,...")->capture_default_str();
  synth_cmd->add_option("--p-repeat", synth.p_repeat)->capture_default_str();
  synth_cmd->add_option("--p-existing-new-pair", synth.p_existing_new_pair)->capture_default_str();
  synth_cmd->add_option("--memory-years", synth.memory_years)->capture_default_str();
  synth_cmd->add_option("--b-without-cn", b_without_cn,
                        "Fraction of Type-B pairs planted without a common neighbor");
  detail::add_output_options(*synth_cmd, c);

  auto* report = app.add_subcommand("report", "Census, recall-precision curves and power-law fits");
  detail::add_input_options(*report, c);
  detail::add_output_options(*report, c);
  add_frames(report);
  add_bootstrap(report);
  report->add_option("--predictor", predictor_name)->capture_default_str();
  add_solo(report);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  auto* sub = app.get_subcommands().front();
  detail::Run run;
  run.subcommand = sub->get_name();
  run.argv = args;
  run.out_dir = c.out_dir;
  const auto started = std::chrono::steady_clock::now();

  try {
    if (c.max_authors && *c.max_authors < 2) throw ConfigError("--max-authors must be at least 2");
    auto frames_from_flags = [&](const Window& range) {
      run.config["past_lengths"] = past_lengths;
      run.config["present_lengths"] = present_lengths;
      run.config["slide"] = slide;
      run.config["data_range"] = range.to_string();
      auto frames = enumerate_frames(range, parse_int_set(past_lengths, "--past-lengths"),
                                     parse_int_set(present_lengths, "--present-lengths"), slide);
      if (frames.empty_combinations > 0)
        err << "note: " << frames.empty_combinations
            << " length combination(s) do not fit the data range\n";
      return frames.frames;
    };
    auto require_seed = [&]() -> std::uint64_t {
      if (n_boot > 0 && !seed) throw ConfigError("--seed is required when --n-boot > 0");
      if (seed) run.seeds.push_back(*seed);
      run.config["n_boot"] = n_boot;
      run.config["min_tail"] = min_tail;
      run.config["window_lengths"] = window_lengths;
      return seed.value_or(0);
    };
    auto run_powerlaw = [&](const Corpus& corpus, const Window& range, std::uint64_t s) {
      auto windows =
          enumerate_single_windows(range, parse_int_set(window_lengths, "--window-lengths"), slide);
      auto fits = powerlaw_over_windows(corpus, windows, n_boot, s, FitOptions{min_tail},
                                        c.include_solo, c.jobs);
      auto f = run.open("powerlaw.csv");
      write_powerlaw_csv(f, fits);
      auto g = run.open("ccdf.csv");
      write_ccdf_csv(g, fits);
      std::size_t failed = 0;
      for (const auto& r : fits) failed += r.fit ? 0 : 1;
      out << fits.size() << " window(s) fitted, " << failed << " without a fit\n";
    };
    auto run_evaluate = [&](const Corpus& corpus, const std::vector<FramePair>& frames) {
      auto predictor = parse_predictor(predictor_name);
      run.config["predictor"] = predictor_name;
      auto evals = evaluate_frames(corpus, frames, predictor, c.include_solo, c.jobs);
      auto f = run.open("pr_curve.csv");
      write_pr_csv(f, evals);
      auto g = run.open("pr_summary.csv");
      write_pr_summary_csv(g, evals);
      out << evals.size() << " frame(s) evaluated with " << predictor_name << '\n';
    };

    if (run.subcommand == "ingest") {
      ParseReport parse_report;
      double retention = 1.0;
      auto corpus = detail::load_corpus(c, run, &parse_report, &retention);
      auto stats = corpus_stats(corpus);
      {
        auto f = run.open("corpus.jsonl");
        write_jsonl(f, corpus);
      }
      {
        auto f = run.open("papers_per_year.csv");
        f << "year,papers\n";
        for (auto [y, n] : stats.papers_per_year) f << y << ',' << n << '\n';
      }
      {
        auto f = run.open("team_sizes.csv");
        f << "authors,papers\n";
        for (auto [k, n] : stats.team_sizes) f << k << ',' << n << '\n';
      }
      if (!edges_window.empty()) {
        auto w = parse_window(edges_window, "--edges-window");
        auto f = run.open("edges_" + w.to_string() + ".csv");
        write_edge_list(f, build_graph(corpus, w, c.include_solo));
      }
      run.config["duplicate_authors_removed"] = parse_report.duplicate_authors_removed;
      run.config["empty_author_records"] = parse_report.empty_author_records;
      run.config["duplicate_paper_ids"] = parse_report.duplicate_id_lines.size();
      run.config["retention_ratio"] = retention;
      out << stats.papers << " papers, " << stats.distinct_authors << " distinct authors, years "
          << corpus.year_min() << "-" << corpus.year_max() << ", retention "
          << csv::fixed(retention, 6) << '\n';
      for (auto line : parse_report.duplicate_id_lines)
        err << "warning: line " << line << ": duplicate paper_id dropped\n";
    } else if (run.subcommand == "census") {
      auto corpus = detail::load_corpus(c, run);
      auto frames = frames_from_flags(detail::data_range(c, corpus));
      auto rows = census_over_frames(corpus, frames, c.include_solo, c.jobs);
      auto f = run.open("census.csv");
      write_census_csv(f, rows);
      out << rows.size() << " frame(s) written\n";
    } else if (run.subcommand == "predict") {
      auto corpus = detail::load_corpus(c, run);
      auto predictor = parse_predictor(predictor_name);
      auto window = parse_window(past_window, "--past");
      run.config["predictor"] = predictor_name;
      run.config["past"] = window.to_string();
      run.config["log_base"] = log_base;
      auto past = build_graph(corpus, window, c.include_solo);
      auto ranked = rank(predictor, past, ScoringOptions{log_base});
      auto f = run.open("ranked_" + predictor_name + ".csv");
      write_ranked_csv(f, past, ranked);
      out << ranked.pair_count() << " candidate pair(s) in " << ranked.groups.size()
          << " tie group(s)\n";
    } else if (run.subcommand == "evaluate") {
      auto corpus = detail::load_corpus(c, run);
      std::vector<FramePair> frames;
      if (!past_window.empty() || !present_window.empty()) {
        if (past_window.empty() || present_window.empty())
          throw ConfigError("--past and --present must be given together");
        frames.emplace_back(parse_window(past_window, "--past"),
                            parse_window(present_window, "--present"));
        run.config["past"] = past_window;
        run.config["present"] = present_window;
      } else {
        frames = frames_from_flags(detail::data_range(c, corpus));
      }
      run_evaluate(corpus, frames);
    } else if (run.subcommand == "powerlaw") {
      auto s = require_seed();
      auto corpus = detail::load_corpus(c, run);
      run_powerlaw(corpus, detail::data_range(c, corpus), s);
    } else if (run.subcommand == "synth") {
      synth.seed = *seed;
      synth.years = parse_window(synth_years, "--years");
      synth.team_sizes = parse_team_sizes(team_sizes);
      synth.b_without_common_neighbor = b_without_cn;
      run.seeds.push_back(*seed);
      run.config["years"] = synth_years;
      run.config["papers_per_year"] = synth.papers_per_year;
      run.config["team_sizes"] = team_sizes;
      run.config["p_repeat"] = synth.p_repeat;
      run.config["p_existing_new_pair"] = synth.p_existing_new_pair;
      run.config["memory_years"] = synth.memory_years;
      run.config["b_without_cn"] = b_without_cn ? nlohmann::ordered_json(*b_without_cn) : nullptr;
      auto result = generate_corpus(synth);
      {
        auto f = run.open("corpus.jsonl");
        write_jsonl(f, result.corpus);
      }
      {
        auto f = run.open("intent.jsonl");
        write_intents_jsonl(f, result.intents);
      }
      run.config["fallbacks"] = result.fallbacks;
      out << result.corpus.size() << " papers, " << result.intents.size() << " labeled pairs, "
          << result.fallbacks << " fallback(s)\n";
    } else if (run.subcommand == "report") {
      auto s = require_seed();
      auto corpus = detail::load_corpus(c, run);
      auto range = detail::data_range(c, corpus);
      auto frames = frames_from_flags(range);
      auto rows = census_over_frames(corpus, frames, c.include_solo, c.jobs);
      {
        auto f = run.open("census.csv");
        write_census_csv(f, rows);
      }
      run_evaluate(corpus, frames);
      run_powerlaw(corpus, range, s);
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
    detail::write_manifest(run, elapsed.count());
    return ExitCode::ok;
  } catch (const MissingInput& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::input_error;
  } catch (const ConfigError& e) {
    err << "error: invalid configuration: " << e.what() << '\n';
    return ExitCode::config_error;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::data_error;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::input_error;
  }
}

}  // namespace linkbounds::cli
