#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>

#include "linkbounds/cli.hpp"
#include "support.hpp"

using linkbounds::cli::run_cli;
using testsupport::slurp;
using testsupport::TempDir;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "linkbounds");
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string synth_corpus(const TempDir& dir) {
  auto r = run({"synth", "--seed", "11", "--years", "2000-2006", "--papers-per-year", "150",
                "--team-sizes", "2:0.7,3:0.3", "--out-dir", dir.str()});
  EXPECT_EQ(r.code, 0) << r.err;
  return dir.str("corpus.jsonl");
}

}  // namespace

TEST(Cli, SynthThenCensus) {
  TempDir dir("cli");
  auto corpus = synth_corpus(dir);
  auto r = run({"census", "--input", corpus, "--past-lengths", "1,3,5", "--present-lengths",
                "1,3,5", "--out-dir", dir.str()});
  ASSERT_EQ(r.code, 0) << r.err;
  auto csv = slurp(dir.path() / "census.csv");
  std::size_t rows = std::count(csv.begin(), csv.end(), '\n') - 1;
  std::size_t expected = 0;
  for (int p : {1, 3, 5})
    for (int q : {1, 3, 5}) expected += static_cast<std::size_t>(std::max(0, 7 - p - q + 1));
  EXPECT_EQ(rows, expected);

  auto manifest = nlohmann::json::parse(slurp(dir.path() / "census_manifest.json"));
  EXPECT_EQ(manifest["subcommand"], "census");
  EXPECT_EQ(manifest["argv"][1], "census");
  EXPECT_EQ(manifest["inputs"][0], corpus);
  EXPECT_EQ(manifest["outputs"][0], dir.str("census.csv"));
  EXPECT_EQ(manifest["config"]["past_lengths"], "1,3,5");
  EXPECT_TRUE(manifest["wall_clock_seconds"].is_number());
}

TEST(Cli, EvaluateSingleFrame) {
  TempDir dir("cli");
  auto corpus = synth_corpus(dir);
  auto r = run({"evaluate", "--input", corpus, "--predictor", "adamic-adar", "--past",
                "2001-2001", "--present", "2002-2002", "--out-dir", dir.str()});
  ASSERT_EQ(r.code, 0) << r.err;
  auto curve = slurp(dir.path() / "pr_curve.csv");
  EXPECT_EQ(curve.substr(0, curve.find('\n')),
            "predictor,past_start,past_end,present_start,present_end,cum_k,precision,recall");
  auto summary = slurp(dir.path() / "pr_summary.csv");
  EXPECT_NE(summary.find("\nadamic-adar,2001,2001,2002,2002,"), std::string::npos);
  EXPECT_EQ(run({"evaluate", "--input", corpus, "--past", "2001-2001", "--out-dir", dir.str()}).code, 3);
}

TEST(Cli, IngestPredictAndPowerlaw) {
  TempDir dir("cli");
  auto corpus = synth_corpus(dir);
  auto out = dir.path() / "ingest";
  auto r = run({"ingest", "--input", corpus, "--max-authors", "2", "--edges-window", "2000-2001",
                "--out-dir", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  for (auto f : {"corpus.jsonl", "papers_per_year.csv", "team_sizes.csv", "edges_2000-2001.csv",
                 "ingest_manifest.json"})
    EXPECT_TRUE(std::filesystem::exists(out / f)) << f;
  EXPECT_EQ(slurp(out / "team_sizes.csv").substr(0, 15), "authors,papers\n");

  r = run({"predict", "--input", corpus, "--past", "2000-2002", "--predictor", "degree-product",
           "--out-dir", dir.str()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "ranked_degree-product.csv"));

  r = run({"powerlaw", "--input", corpus, "--window-lengths", "2,6", "--n-boot", "100", "--seed",
           "42", "--out-dir", dir.str()});
  ASSERT_EQ(r.code, 0) << r.err;
  auto fits = slurp(dir.path() / "powerlaw.csv");
  EXPECT_EQ(std::count(fits.begin(), fits.end(), '\n'), 1 + 6 + 2);
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "ccdf.csv"));
}

TEST(Cli, ReportWritesEveryFamily) {
  TempDir dir("cli");
  auto corpus = synth_corpus(dir);
  auto r = run({"report", "--input", corpus, "--past-lengths", "1", "--present-lengths", "1",
                "--window-lengths", "3", "--n-boot", "0", "--out-dir", dir.str()});
  ASSERT_EQ(r.code, 0) << r.err;
  for (auto f : {"census.csv", "pr_curve.csv", "pr_summary.csv", "powerlaw.csv", "ccdf.csv",
                 "report_manifest.json"})
    EXPECT_TRUE(std::filesystem::exists(dir.path() / f)) << f;
  auto manifest = nlohmann::json::parse(slurp(dir.path() / "report_manifest.json"));
  EXPECT_EQ(manifest["outputs"].size(), 5u);
}

TEST(Cli, ByteIdenticalAcrossJobCounts) {
  TempDir dir("cli");
  auto corpus = synth_corpus(dir);
  std::string first;
  for (auto jobs : {"1", "4"}) {
    auto out = dir.path() / jobs;
    auto r = run({"report", "--input", corpus, "--window-lengths", "2", "--n-boot", "100",
                  "--seed", "7", "--jobs", jobs, "--out-dir", out.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    std::string all;
    for (auto f : {"census.csv", "pr_curve.csv", "pr_summary.csv", "powerlaw.csv", "ccdf.csv"})
      all += slurp(out / f);
    if (first.empty())
      first = all;
    else
      EXPECT_EQ(all, first);
  }
}

TEST(Cli, Errors) {
  TempDir dir("cli");
  auto corpus = synth_corpus(dir);
  auto missing = run({"census", "--input", dir.str("nope.jsonl"), "--out-dir", dir.str()});
  EXPECT_EQ(missing.code, 2);
  EXPECT_NE(missing.err.find("cannot open input file"), std::string::npos);

  auto bad_format = run({"census", "--input", corpus, "--format", "xml", "--out-dir", dir.str()});
  EXPECT_EQ(bad_format.code, 3);
  auto no_seed = run({"powerlaw", "--input", corpus, "--out-dir", dir.str()});
  EXPECT_EQ(no_seed.code, 3);
  EXPECT_NE(no_seed.err.find("--seed"), std::string::npos);
  EXPECT_EQ(run({"census", "--input", corpus, "--max-authors", "1", "--out-dir", dir.str()}).code, 3);
  EXPECT_EQ(run({"census", "--input", corpus, "--slide", "0", "--out-dir", dir.str()}).code, 3);
  EXPECT_EQ(run({"predict", "--input", corpus, "--past", "2000-2001", "--predictor", "katz",
                 "--out-dir", dir.str()}).code, 3);

  auto unknown = run({"census", "--input", corpus, "--bogus"});
  EXPECT_NE(unknown.code, 0);
  EXPECT_NE(unknown.code, 2);
  EXPECT_FALSE(unknown.err.empty());
  EXPECT_NE(run({"synth", "--out-dir", dir.str()}).code, 0);  // --seed is required
  EXPECT_NE(run({}).code, 0);

  std::ofstream(dir.path() / "broken.tsv") << "p1\tnot-a-year\tA\n";
  auto broken = run({"census", "--input", dir.str("broken.tsv"), "--format", "tsv", "--out-dir", dir.str()});
  EXPECT_EQ(broken.code, 4);
  EXPECT_NE(broken.err.find("line 1"), std::string::npos);
}
