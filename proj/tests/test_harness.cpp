#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "eqlearn/harness/experiment.hpp"
#include "eqlearn/harness/verify.hpp"
#include "support/oracles.hpp"

using namespace eqlearn;
using namespace eqlearn::harness;

namespace fs = std::filesystem;

namespace {

ExperimentConfig parse(const std::string& text) {
  ExperimentConfig c;
  std::istringstream in(text);
  read_config(in, c);
  return c;
}

std::string validate_message(const ExperimentConfig& c) {
  try {
    validate(c);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream o;
  o << in.rdbuf();
  return o.str();
}

fs::path scratch(const std::string& name) {
  fs::path dir = fs::path(::testing::TempDir()) / "eqlearn_harness";
  fs::create_directories(dir);
  return dir / name;
}

int run_cli(const std::string& args) {
  std::string cmd = std::string("\"") + EQLEARN_CLI + "\" " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const fs::path kGolden = fs::path(__FILE__).parent_path() / "golden";

}  // namespace

TEST(Config, ParsesKeysCommentsAndAliases) {
  auto c = parse("# header\ndomain = clustering  # trailing\n\nfeedback=specified\nn = 5\nnoise_model = adversarial\nbase_seed = 42\nexactly_k = yes\n");
  EXPECT_EQ(c.domain, "clustering");
  EXPECT_EQ(c.feedback, "specified");
  EXPECT_EQ(c.n, 5);
  EXPECT_EQ(c.noise, "adversarial");
  EXPECT_EQ(c.seed, 42u);
  EXPECT_TRUE(c.exactly_k);
}

TEST(Config, RejectsMalformedInput) {
  EXPECT_THROW(parse("colour = blue\n"), ConfigError);
  EXPECT_THROW(parse("n = five\n"), ConfigError);
  EXPECT_THROW(parse("n = 5x\n"), ConfigError);
  EXPECT_THROW(parse("just words\n"), ConfigError);
  EXPECT_THROW(parse("exactly_k = maybe\n"), ConfigError);
  ExperimentConfig c;
  EXPECT_THROW(read_config_file("/nonexistent/eqlearn.cfg", c), ConfigError);
}

TEST(Config, ValidationNamesTheField) {
  ExperimentConfig ok;
  EXPECT_EQ(validate_message(ok), "");

  auto expect_field = [](ExperimentConfig c, const std::string& field) {
    std::string msg = validate_message(c);
    EXPECT_NE(msg.find("'" + field + "'"), std::string::npos) << msg;
  };
  ExperimentConfig c;
  c.p = 0.5;
  expect_field(c, "p");
  c = {};
  c.delta = 1.0;
  expect_field(c, "delta");
  c = {};
  c.trials = 0;
  expect_field(c, "trials");
  c = {};
  c.domain = "graphs";
  expect_field(c, "domain");
  c = {};
  c.feedback = "specified";
  expect_field(c, "feedback");
  c = {};
  c.oracle = "adversary";
  c.p = 0.9;
  expect_field(c, "oracle");
  c = {};
  c.domain = "clustering";
  c.feedback = "unspecified";
  c.median = "greedy-clustering";
  c.k = 9;
  expect_field(c, "k");
}

TEST(Bound, NoiselessIsCeilLog) {
  EXPECT_EQ(theoretical_bound(1.0, 0.2, 0.5, 720.0), 10.0);
  EXPECT_EQ(theoretical_bound(1.0, 0.2, 0.5, 1024.0), 10.0);
  EXPECT_EQ(theoretical_bound(1.0, 0.2, 0.5, 1.0), 0.0);
  EXPECT_EQ(theoretical_bound(1.0, 0.2, 0.75, 81.0), std::ceil(std::log(81.0) / std::log(4.0 / 3.0) - 1e-12));
  EXPECT_THROW(theoretical_bound(1.0, 0.2, 0.5, 0.0), ConfigError);
}

TEST(Bound, NoisyLeadingTerm) {
  double h = oracle::binary_entropy(0.75);
  EXPECT_NEAR(theoretical_bound(0.75, 0.2, 0.5, 720.0), 0.8 * std::log2(720.0) / (1.0 - h), 1e-9);
  ExperimentConfig c;
  c.p = 0.9;
  c.delta = 0.1;
  EXPECT_NEAR(theoretical_bound(c, 120.0), 0.9 * std::log2(120.0) / (1.0 - oracle::binary_entropy(0.9)), 1e-9);
  // beta * p + (1 - beta)(1 - p) too close to 1: no positive rate.
  EXPECT_THROW(theoretical_bound(0.85, 0.2, 0.75, 16.0), ConfigError);
}

TEST(Csv, EmptyRunWritesOnlyHeader) {
  auto path = scratch("empty.csv");
  emit_csv({}, path.string());
  EXPECT_EQ(slurp(path), std::string(kCsvHeader) + "\n");
}

TEST(Csv, RoundTrip) {
  std::vector<RunRecord> rows{
      {0, "ranking-bubble", 5, 120, 1.0, 0.2, "uniform", 6, true, 7, 11},
      {1, "classify-hyperplane", 8, 74, 0.85, 0.25, "adversarial", 31, false, 17.126, 12},
  };
  std::stringstream io;
  write_csv(io, rows);
  EXPECT_EQ(read_csv(io), rows);
  std::istringstream bad_header("trial,queries\n");
  EXPECT_THROW(read_csv(bad_header), ConfigError);
}

TEST(Csv, UnwritablePathIsAConfigError) {
  EXPECT_THROW(emit_csv({}, "/nonexistent-dir/out.csv"), ConfigError);
}

TEST(Experiment, BubbleAllTargetsWithinBound) {
  ExperimentConfig c;
  c.n = 5;
  c.targets = "all";
  c.trials = 120;
  c.oracle = "adversarial-valid";
  auto r = run_experiment(c);
  ASSERT_EQ(r.records.size(), 120u);
  EXPECT_EQ(r.summary.violations, 0u);
  EXPECT_EQ(r.summary.success_rate, 1.0);
  EXPECT_EQ(r.summary.n0, 120.0);
  for (const auto& row : r.records) {
    EXPECT_EQ(row.theoretical_bound, 7.0);
    EXPECT_LE(row.queries, 7u);
  }
}

TEST(Experiment, SeedsAreBasePlusTrialAndRunsRepeat) {
  ExperimentConfig c;
  c.domain = "clustering";
  c.feedback = "specified";
  c.n = 4;
  c.k = 4;
  c.p = 0.9;
  c.trials = 15;
  c.seed = 500;
  auto a = run_experiment(c);
  auto b = run_experiment(c);
  EXPECT_EQ(a.records, b.records);
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].trial, i);
    EXPECT_EQ(a.records[i].seed, 500 + i);
  }
  c.seed = 501;
  auto shifted = run_experiment(c);
  // Trial i of the shifted run replays trial i + 1 of the original.
  for (std::size_t i = 0; i + 1 < a.records.size(); ++i) EXPECT_EQ(shifted.records[i].queries, a.records[i + 1].queries);
}

TEST(Experiment, NoisyHypercubeSucceeds) {
  ExperimentConfig c;
  c.domain = "classify";
  c.mode = "hypercube";
  c.n = 4;
  c.p = 0.9;
  c.delta = 0.2;
  c.trials = 200;
  c.seed = 3;
  auto r = run_experiment(c);
  EXPECT_TRUE(r.summary.noisy);
  EXPECT_GE(r.summary.success_rate, 0.8);
  EXPECT_NE(summary_text(r.summary).find("success_rate="), std::string::npos);
}

TEST(Experiment, InvalidConfigThrows) {
  ExperimentConfig c;
  c.median = "greedy-clustering";
  EXPECT_THROW(run_experiment(c), ConfigError);
}

TEST(Verify, EveryScopePasses) {
  for (std::string scope : {"core", "ranking", "clustering", "classify"}) {
    auto rep = verify_suite(scope, 7);
    EXPECT_FALSE(rep.checks.empty()) << scope;
    for (const auto& c : rep.checks) {
      EXPECT_EQ(c.scope, scope);
      EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
    }
  }
  EXPECT_THROW(verify_suite("everything"), ConfigError);
}

TEST(Cli, ExitCodes) {
  auto cfg = kGolden / "ranking_bubble_n5.cfg";
  EXPECT_EQ(run_cli("--config " + cfg.string() + " learn"), 0);
  EXPECT_EQ(run_cli("learn --n notanumber"), 2);
  EXPECT_EQ(run_cli("learn --domain nowhere"), 2);
  EXPECT_EQ(run_cli("--config /nonexistent.cfg learn"), 2);
  EXPECT_EQ(run_cli("--frobnicate"), 2);
  EXPECT_EQ(run_cli("verify --scope ranking"), 0);
  EXPECT_EQ(run_cli("verify --scope nothing"), 2);
  EXPECT_EQ(run_cli("bounds --n 6"), 0);
}

TEST(Cli, LearnMatchesGoldenSnapshots) {
  for (std::string name : {"ranking_bubble_n5", "clustering_uc_n5"}) {
    auto out = scratch(name + ".csv");
    ASSERT_EQ(run_cli("--config " + (kGolden / (name + ".cfg")).string() + " --out " + out.string() + " learn"), 0);
    EXPECT_EQ(slurp(out), slurp(kGolden / (name + ".csv"))) << name;
  }
}

TEST(Cli, FlagsOverrideConfigFile) {
  auto out = scratch("override.csv");
  auto cfg = kGolden / "ranking_bubble_n5.cfg";
  ASSERT_EQ(run_cli("--config " + cfg.string() + " --trials 3 --out " + out.string() + " learn --n 4"), 0);
  std::ifstream in(out);
  auto rows = read_csv(in);
  ASSERT_EQ(rows.size(), 3u);
  for (const auto& r : rows) EXPECT_EQ(r.n, 4);
  EXPECT_EQ(rows[0].seed, 2024u);
}
