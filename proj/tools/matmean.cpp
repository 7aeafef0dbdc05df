// matmean: run the matrix-mean verification suite from the command line.

#include "matmean/suite.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <iostream>

using namespace matmean;

namespace {

constexpr int kExitError = 2;

struct RangeArg {
  std::vector<double> values;
  Interval interval(const char* flag) const {
    if (values.size() != 2 || !(values[0] <= values[1]))
      throw std::invalid_argument(std::string(flag) + ": expected lo,hi with lo <= hi");
    return {values[0], values[1]};
  }
};

void emit(const std::string& text, const std::optional<std::string>& out) {
  if (!out) {
    std::cout << text;
    return;
  }
  std::FILE* f = std::fopen(out->c_str(), "wb");
  if (!f) throw std::runtime_error("cannot open output path '" + *out + "' for writing");
  const bool ok = std::fwrite(text.data(), 1, text.size(), f) == text.size();
  if (std::fclose(f) != 0 || !ok) throw std::runtime_error("failed writing output path '" + *out + "'");
}

std::string render(const SuiteReport& r) {
  return r.config.format == ReportFormat::Json ? report_json(r) : report_csv(r);
}

void print_summary(const SuiteReport& r) {
  for (const auto& c : r.checks)
    std::fprintf(stderr, "%-12s trials=%ld applicable=%ld failures=%ld\n",
                 std::string(check_info(c.id).name).c_str(), c.trials, c.applicable, c.failures);
  for (const auto& s : r.scalars)
    std::fprintf(stderr, "%-12s %s%s\n", std::string(scalar_lemma(s.id).name).c_str(),
                 s.passed ? "ok" : "FAILED", s.expected_failure ? " (expected failure)" : "");
  for (const auto& p : r.counterexamples)
    std::fprintf(stderr, "S_REMARK     regime %s violation at x=%.6g v=%.6g gap=%.3e\n",
                 p.regime.c_str(), p.x, p.v, p.gap);
  const auto failing = r.failing_ids();
  std::fprintf(stderr, "exit %d%s\n", r.exit_code(), failing.empty() ? "" : " (failing checks present)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of matrix mean inequalities"};
  app.set_version_flag("--version", MATMEAN_VERSION);
  app.require_subcommand(1);

  SuiteConfig config;
  config.master_seed = default_master_seed();
  std::string format = "json";
  std::vector<double> spectrum;
  bool quiet = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--checks", config.checks, "Check ids (M_* or S_*), comma separated")->delimiter(',');
    sub->add_option("--out", config.out, "Output path (default: stdout)");
    sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_flag("--quiet", quiet, "No summary on stderr");
  };

  auto* run = app.add_subcommand("run", "Full suite: matrix checks, scalar lemmas, counterexample");
  add_common(run);
  run->add_option("--trials", config.trials, "Trials per check, dimension and weight");
  run->add_option("--dims", config.dims, "Matrix dimensions")->delimiter(',');
  run->add_option("--v-grid", config.v_grid, "Weights for weighted checks")->delimiter(',');
  run->add_option("--seed", config.master_seed, "Master seed (default: $MATMEAN_SEED or 42)");
  run->add_option("--tol", config.tol_rel, "Relative tolerance");
  run->add_option("--spectrum", spectrum, "Eigenvalue range lo,hi")->delimiter(',')->expected(2);
  run->add_option("--threads", config.threads, "Worker threads (0: all cores)");

  auto* scalar = app.add_subcommand("scalar", "Scalar lemmas only");
  add_common(scalar);

  RangeArg x_range{{1.0, 2.0}}, v_range{{0.5, 1.0}};
  int resolution = 200;
  std::vector<double> near;
  std::optional<std::string> ce_out;
  auto* ce = app.add_subcommand("counterexample", "Search for a violation of S_REMARK");
  ce->add_option("--x-range", x_range.values, "x range lo,hi")->delimiter(',')->expected(2);
  ce->add_option("--v-range", v_range.values, "v range lo,hi")->delimiter(',')->expected(2);
  ce->add_option("--resolution", resolution, "Grid points per axis")->check(CLI::PositiveNumber);
  ce->add_option("--near", near, "Search a 0.1 x 0.1 box around x,v and certify the point itself")->delimiter(',')->expected(2);
  ce->add_option("--out", ce_out, "Output path (default: stdout)");

  std::string replay_check;
  std::uint64_t replay_seed = 0;
  int replay_dim = 2;
  double replay_v = 0.5;
  double replay_tol = kDefaultTolerance;
  std::optional<std::string> replay_out;
  auto* rp = app.add_subcommand("replay", "Re-evaluate one trial from its child seed");
  rp->add_option("--check", replay_check, "Matrix check id")->required();
  rp->add_option("--seed", replay_seed, "Child seed")->required();
  rp->add_option("--dim", replay_dim, "Dimension")->required();
  rp->add_option("--v", replay_v, "Weight");
  rp->add_option("--tol", replay_tol, "Relative tolerance");
  rp->add_option("--spectrum", spectrum, "Eigenvalue range lo,hi")->delimiter(',')->expected(2);
  rp->add_option("--out", replay_out, "Output path (default: stdout)");

  auto* list = app.add_subcommand("list", "List check ids");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!spectrum.empty()) config.spectrum = SpectrumRange{spectrum.at(0), spectrum.at(1)};
    config.format = *parse_format(format);

    if (list->parsed()) {
      for (const auto& c : list_checks())
        std::cout << c.name << '\t' << c.hypothesis << '\n';
      for (const auto& s : scalar_lemmas()) std::cout << s.name << '\t' << s.statement << '\n';
      return 0;
    }

    if (run->parsed() || scalar->parsed()) {
      if (scalar->parsed()) {
        config.run_matrix = false;
        config.run_counterexample = false;
      }
      const auto report = run_suite(config);
      emit(render(report), config.out);
      if (!quiet) print_summary(report);
      return report.exit_code();
    }

    if (ce->parsed()) {
      Interval xr = x_range.interval("--x-range");
      Interval vr = v_range.interval("--v-range");
      if (!near.empty()) {
        const double x = near.at(0), v = near.at(1);
        const bool regime_i = v >= 0.5;
        xr = regime_i ? Interval{std::max(1.0, x - 0.05), std::max(1.0, x) + 0.05}
                      : Interval{std::max(1e-6, x - 0.05), std::min(1.0, x + 0.05)};
        vr = regime_i ? Interval{std::max(0.5, v - 0.05), std::min(1.0, v + 0.05)}
                      : Interval{std::max(0.0, v - 0.05), std::min(0.5, v + 0.05)};
      }
      std::vector<CounterexamplePoint> points;
      if (auto p = search_remark_counterexample(xr, vr, resolution)) points.push_back(*p);
      std::optional<CounterexamplePoint> witness;
      if (!near.empty()) witness = remark_witness(near[0], near[1], xr, vr, resolution);
      emit(counterexample_json(points, witness), ce_out);
      const bool certified = !points.empty() && points[0].persists && (!witness || witness->persists);
      return certified ? 0 : 1;
    }

    if (rp->parsed()) {
      const auto r = replay(replay_check, replay_seed, replay_dim, replay_v, replay_tol,
                            config.spectrum_or_default());
      emit(check_result_json(r, replay_seed, replay_dim, replay_v), replay_out);
      return r.applicable && !r.passed ? 1 : 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "matmean: error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
