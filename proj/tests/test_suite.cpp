#include "matmean/suite.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdlib>
#include <sstream>

using namespace matmean;
using nlohmann::json;

namespace {

SuiteConfig small_config() {
  SuiteConfig c;
  c.trials = 3;
  c.dims = {2, 3};
  c.v_grid = {0.25, 0.5, 0.75};
  c.run_scalar = false;
  c.run_counterexample = false;
  c.threads = 1;
  return c;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

TEST(SuiteConfigTest, InvalidFieldsNamed) {
  auto expect_named = [](SuiteConfig c, const std::string& field) {
    try {
      c.validate();
      FAIL() << "expected rejection of " << field;
    } catch (const std::invalid_argument& e) {
      EXPECT_EQ(std::string(e.what()).rfind(field, 0), 0u) << e.what();
    }
  };
  SuiteConfig c;
  c.trials = 0;
  expect_named(c, "trials");
  c = SuiteConfig{};
  c.dims = {};
  expect_named(c, "dims");
  c = SuiteConfig{};
  c.tol_rel = 0;
  expect_named(c, "tol_rel");
  c = SuiteConfig{};
  c.v_grid = {1.5};
  expect_named(c, "v_grid");
  c = SuiteConfig{};
  c.checks = {"M_NOPE"};
  expect_named(c, "checks");
  c = SuiteConfig{};
  c.spectrum = SpectrumRange{-1, 1};
  expect_named(c, "spectrum");
}

TEST(SuiteConfigTest, EnvironmentSeedDefault) {
  ::setenv("MATMEAN_SEED", "1234", 1);
  EXPECT_EQ(default_master_seed(), 1234u);
  ::setenv("MATMEAN_SEED", "junk", 1);
  EXPECT_EQ(default_master_seed(), kDefaultMasterSeed);
  ::unsetenv("MATMEAN_SEED");
  EXPECT_EQ(default_master_seed(), kDefaultMasterSeed);
}

TEST(SuiteTest, SingleIdentityTrial) {
  SuiteConfig c;
  c.trials = 1;
  c.dims = {1};
  c.checks = {"M_ID1"};
  c.master_seed = 7;
  const auto r = run_suite(c);
  ASSERT_EQ(r.checks.size(), 1u);
  EXPECT_EQ(r.checks[0].applicable, 1);
  EXPECT_EQ(r.checks[0].failures, 0);
  ASSERT_TRUE(r.checks[0].max_residual.has_value());
  EXPECT_LE(*r.checks[0].max_residual, 1e-12);
  EXPECT_TRUE(r.scalars.empty());
  EXPECT_FALSE(r.counterexample_searched);
  EXPECT_EQ(r.exit_code(), 0);
}

TEST(SuiteTest, EmptyFilterCoversEverything) {
  auto c = small_config();
  c.trials = 1;
  c.dims = {2};
  c.run_scalar = true;
  c.run_counterexample = true;
  const auto r = run_suite(c);
  EXPECT_EQ(r.checks.size(), 19u);
  EXPECT_EQ(r.scalars.size(), 9u);
  EXPECT_TRUE(r.counterexample_searched);
  EXPECT_EQ(r.counterexamples.size(), 2u);
  const auto j = json::parse(report_json(r));
  EXPECT_EQ(j["matrix_checks"].size(), 19u);
  EXPECT_EQ(j["scalar_lemmas"].size(), 9u);
}

TEST(SuiteTest, CountsAreConsistent) {
  const auto r = run_suite(small_config());
  for (const auto& s : r.checks) {
    const bool weighted = check_info(s.id).weighted;
    EXPECT_EQ(s.trials, 3 * 2 * (weighted ? 3 : 1)) << check_info(s.id).name;
    EXPECT_LE(s.failures, s.applicable);
    EXPECT_LE(s.applicable, s.trials);
    EXPECT_EQ(s.applicable + s.not_applicable, s.trials);
    if (s.failures > 0) {
      EXPECT_FALSE(s.failing.empty());
    }
  }
}

TEST(SuiteTest, ByteIdenticalAcrossRunsAndThreadCounts) {
  auto c = small_config();
  const auto first = report_json(run_suite(c));
  const auto second = report_json(run_suite(c));
  EXPECT_EQ(first, second);
  c.threads = 3;
  EXPECT_EQ(report_json(run_suite(c)), first);
}

TEST(SuiteTest, ReplayReproducesWorstAndFailingTrials) {
  const auto c = small_config();
  const auto r = run_suite(c);
  for (const auto& s : r.checks) {
    if (!s.worst) continue;
    const auto again = replay(s.id, s.worst->seed, s.worst->dim, s.worst->v, c.tol_rel);
    ASSERT_TRUE(again.applicable);
    EXPECT_EQ(again.score(), s.worst->score) << check_info(s.id).name;
    for (const auto& f : s.failing) {
      const auto rf = replay(s.id, f.seed, f.dim, f.v, c.tol_rel);
      EXPECT_FALSE(rf.passed);
      EXPECT_EQ(rf.score(), f.score);
    }
  }
}

TEST(SuiteTest, ReplayWithPerturbedSeedChangesInstance) {
  const auto id = MatrixCheckId::Thm1;
  const auto seed = trial_seed(42, id, 0);
  const auto x = make_trial_instance(id, seed, 4, 0.5);
  const auto y = make_trial_instance(id, seed + 1, 4, 0.5);
  EXPECT_NE(x.a.matrix(), y.a.matrix());
  EXPECT_NE(replay(id, seed, 4, 0.5).min_margin(), replay(id, seed + 1, 4, 0.5).min_margin());
  EXPECT_THROW(replay("M_NOPE", seed, 4, 0.5), std::invalid_argument);
}

TEST(SuiteTest, ReplayReproducesLowSignalFlag) {
  // A spectrum spanning 14 decades makes some B <= A gaps negligible.
  const SpectrumRange wide{1e-12, 1e2};
  auto c = small_config();
  c.checks = {"M_HIRZ"};
  c.dims = {1};
  c.v_grid = {0.5};
  c.trials = 400;
  c.spectrum = wide;
  const auto r = run_suite(c);
  ASSERT_GT(r.checks[0].low_signal, 0);
  int flagged = 0;
  for (int t = 0; t < c.trials; ++t) {
    const auto seed = trial_seed(c.master_seed, MatrixCheckId::Hirz, t);
    const auto first = replay(MatrixCheckId::Hirz, seed, 1, 0.5, c.tol_rel, wide);
    if (!first.low_signal) continue;
    ++flagged;
    EXPECT_TRUE(replay(MatrixCheckId::Hirz, seed, 1, 0.5, c.tol_rel, wide).low_signal);
  }
  EXPECT_EQ(flagged, r.checks[0].low_signal);
}

TEST(SuiteTest, CsvMatchesJsonNumbers) {
  const auto r = run_suite(small_config());
  const auto j = json::parse(report_json(r));
  std::stringstream csv(report_csv(r));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "check_id,trials,applicable,failures,min_margin,min_sv_gap,max_residual,worst_seed");
  std::size_t row = 0;
  while (std::getline(csv, line)) {
    const auto cells = split_csv_line(line);
    ASSERT_EQ(cells.size(), 8u) << line;
    const auto& c = j["matrix_checks"][row++];
    EXPECT_EQ(cells[0], c["check_id"].get<std::string>());
    EXPECT_EQ(std::stol(cells[1]), c["trials"].get<long>());
    EXPECT_EQ(std::stol(cells[2]), c["applicable"].get<long>());
    EXPECT_EQ(std::stol(cells[3]), c["failures"].get<long>());
    for (int k = 4; k < 7; ++k) {
      const char* key = k == 4 ? "min_margin" : (k == 5 ? "min_sv_gap" : "max_residual");
      if (c[key].is_null()) {
        EXPECT_TRUE(cells[k].empty());
      } else {
        EXPECT_EQ(std::strtod(cells[k].c_str(), nullptr), c[key].get<double>()) << key;
      }
    }
    if (c["worst_seed"].is_null()) {
      EXPECT_TRUE(cells[7].empty());
    } else {
      EXPECT_EQ(std::stoull(cells[7]), c["worst_seed"].get<std::uint64_t>());
    }
  }
  EXPECT_EQ(row, j["matrix_checks"].size());
}

TEST(SuiteTest, ExitCodeFollowsFailures) {
  auto c = small_config();
  c.checks = {"M_CHAIN", "M_THM1"};
  EXPECT_EQ(run_suite(c).exit_code(), 0);
  c.checks = {"M_GH_V"};
  c.v_grid = {0.9};
  c.trials = 20;
  const auto r = run_suite(c);
  EXPECT_GT(r.checks[0].failures, 0);
  EXPECT_EQ(r.exit_code(), 1);
  EXPECT_EQ(r.failing_ids(), std::vector<std::string>{"M_GH_V"});
}

TEST(SuiteTest, RemarkCounterexampleIsNotAFailure) {
  SuiteConfig c;
  c.checks = {"S_REMARK"};
  const auto r = run_suite(c);
  EXPECT_TRUE(r.checks.empty());
  ASSERT_EQ(r.scalars.size(), 1u);
  EXPECT_TRUE(r.scalars[0].expected_failure);
  EXPECT_TRUE(r.scalars[0].passed);
  EXPECT_EQ(r.counterexamples.size(), 2u);
  EXPECT_EQ(r.exit_code(), 0);
}

TEST(SuiteTest, UnwritablePathRaises) {
  const auto r = run_suite(small_config());
  EXPECT_THROW(write_report(r, "/nonexistent-dir/report.json", ReportFormat::Json), std::runtime_error);
}

TEST(SuiteTest, AdmissibleWeightsOnly) {
  // Every grid weight is admissible for the corollary: v > 1/2 draws A <= B,
  // v < 1/2 draws B <= A, and v = 1/2 alternates by seed.
  EXPECT_EQ(trial_relation(MatrixCheckId::Cor25, 0.8, 0), Relation::ALeqB);
  EXPECT_EQ(trial_relation(MatrixCheckId::Cor25, 0.2, 0), Relation::BLeqA);
  EXPECT_NE(trial_relation(MatrixCheckId::Cor25, 0.5, 0), trial_relation(MatrixCheckId::Cor25, 0.5, 1));
  auto c = small_config();
  c.checks = {"M_COR25"};
  const auto r = run_suite(c);
  EXPECT_EQ(r.checks[0].not_applicable, 0);
}
