#pragma once

// Suite runner: seeded trials for every selected check, aggregated into a
// report that can be written as JSON or CSV and replayed trial by trial.

#include "matmean/catalog.hpp"
#include "matmean/generate.hpp"
#include "matmean/scalar_lemmas.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace matmean {

enum class ReportFormat { Json, Csv };

std::string_view to_string(ReportFormat f);
std::optional<ReportFormat> parse_format(std::string_view s);

inline constexpr std::uint64_t kDefaultMasterSeed = 42;

/// MATMEAN_SEED when set and valid, otherwise 42.
std::uint64_t default_master_seed();

struct SuiteConfig {
  int trials = 200;
  std::vector<int> dims{2, 4, 8};
  std::vector<double> v_grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  double tol_rel = kDefaultTolerance;
  std::uint64_t master_seed = kDefaultMasterSeed;
  // Matrix (M_*) and scalar (S_*) ids; empty selects everything.
  std::vector<std::string> checks;
  std::optional<std::string> out;
  ReportFormat format = ReportFormat::Json;
  std::optional<SpectrumRange> spectrum;
  // 0 uses the hardware concurrency. Does not affect the report.
  int threads = 0;

  bool run_matrix = true;
  bool run_scalar = true;
  bool run_counterexample = true;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
  SpectrumRange spectrum_or_default() const { return spectrum.value_or(SpectrumRange{}); }
};

struct TrialRecord {
  std::uint64_t seed = 0;
  int dim = 0;
  double v = 0.5;
  double score = 0.0;
};

struct CheckSummary {
  MatrixCheckId id;
  long trials = 0;
  long applicable = 0;
  long not_applicable = 0;
  long low_signal = 0;
  long failures = 0;
  // Over applicable trials; absent when no trial produced the quantity.
  std::optional<double> min_margin;
  std::optional<double> min_sv_gap;
  std::optional<double> max_residual;
  std::optional<TrialRecord> worst;
  // First kFailingTrialLimit failing trials in trial order.
  std::vector<TrialRecord> failing;
  std::string first_not_applicable_reason;
};

inline constexpr std::size_t kFailingTrialLimit = 25;

struct ScalarSummary {
  ScalarLemmaId id;
  std::vector<ScalarCheckResult> regions;
  std::vector<DerivativeCheckResult> derivatives;
  bool expected_failure = false;
  // Regions and derivative checks pass; for an expected failure, a violation
  // was found.
  bool passed = false;
};

struct SuiteReport {
  SuiteConfig config;
  std::string version;
  std::vector<CheckSummary> checks;
  std::vector<ScalarSummary> scalars;
  std::vector<CounterexamplePoint> counterexamples;
  bool counterexample_searched = false;

  /// 0 when no applicable matrix check and no scalar statement other than S_REMARK
  /// failed, 1 otherwise.
  int exit_code() const;
  std::vector<std::string> failing_ids() const;
};

/// Counterexample search ranges used by the suite: regime (i) and (ii).
struct RemarkSearch {
  Interval x;
  Interval v;
  int resolution;
};
std::vector<RemarkSearch> default_remark_searches();

/// Relation generated for a check at weight v; nullopt when v lies outside
/// every admissible case. Cases overlapping at v are chosen by seed parity.
std::optional<Relation> trial_relation(MatrixCheckId id, double v, std::uint64_t seed);

/// The exact instance behind trial (check, seed, dim, v).
MatrixInstance make_trial_instance(MatrixCheckId id, std::uint64_t seed, int dim, double v,
                                   SpectrumRange spectrum = {});

/// Child seed of trial index t of a check.
std::uint64_t trial_seed(std::uint64_t master, MatrixCheckId id, std::uint64_t t);

SuiteReport run_suite(const SuiteConfig& config);

/// Re-evaluates one trial from its child seed.
CheckResult replay(MatrixCheckId id, std::uint64_t seed, int dim, double v,
                   double tol_rel = kDefaultTolerance, SpectrumRange spectrum = {});
CheckResult replay(std::string_view check_id, std::uint64_t seed, int dim, double v,
                   double tol_rel = kDefaultTolerance, SpectrumRange spectrum = {});

// Serialization.
std::string report_json(const SuiteReport& report);
std::string report_csv(const SuiteReport& report);
std::string check_result_json(const CheckResult& result, std::uint64_t seed, int dim, double v);
std::string counterexample_json(const std::vector<CounterexamplePoint>& points,
                                const std::optional<CounterexamplePoint>& witness = std::nullopt);

/// The S_REMARK gap evaluated exactly at (x, v), with the 4x persistence check
/// on the given search grid.
CounterexamplePoint remark_witness(double x, double v, Interval x_range, Interval v_range,
                                   int resolution);
/// Writes in config.format to config.out; throws std::runtime_error when the
/// path cannot be written.
void write_report(const SuiteReport& report, const std::string& path, ReportFormat format);

}  // namespace matmean
