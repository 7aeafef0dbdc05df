#include "matmean/suite.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace matmean {

namespace {

using nlohmann::ordered_json;

ordered_json number_or_null(std::optional<double> x) {
  if (x && std::isfinite(*x)) return *x;
  return nullptr;
}

ordered_json number_or_null(double x) { return number_or_null(std::optional<double>(x)); }

std::string_view kind_name(ScalarKind k) {
  switch (k) {
    case ScalarKind::Inequality: return "inequality";
    case ScalarKind::Identity: return "identity";
    case ScalarKind::ExpectedToFail: return "expected_to_fail";
  }
  return "inequality";
}

ordered_json config_json(const SuiteConfig& c) {
  ordered_json j;
  j["trials"] = c.trials;
  j["dims"] = c.dims;
  j["v_grid"] = c.v_grid;
  j["tol_rel"] = c.tol_rel;
  j["master_seed"] = c.master_seed;
  j["checks"] = c.checks;
  j["format"] = to_string(c.format);
  const auto s = c.spectrum_or_default();
  j["spectrum"] = {{"lo", s.lo}, {"hi", s.hi}};
  return j;
}

ordered_json trial_json(const TrialRecord& t) {
  return {{"seed", t.seed}, {"dim", t.dim}, {"v", t.v}, {"score", number_or_null(t.score)}};
}

ordered_json check_json(const CheckSummary& s) {
  const auto& info = check_info(s.id);
  ordered_json j;
  j["check_id"] = info.name;
  j["anchor"] = info.anchor;
  j["hypothesis"] = info.hypothesis;
  j["weighted"] = info.weighted;
  j["trials"] = s.trials;
  j["applicable"] = s.applicable;
  j["not_applicable"] = s.not_applicable;
  j["low_signal"] = s.low_signal;
  j["failures"] = s.failures;
  j["min_margin"] = number_or_null(s.min_margin);
  j["min_sv_gap"] = number_or_null(s.min_sv_gap);
  j["max_residual"] = number_or_null(s.max_residual);
  if (s.worst) {
    j["worst_seed"] = s.worst->seed;
    j["worst_dim"] = s.worst->dim;
    j["worst_v"] = s.worst->v;
    j["worst_score"] = number_or_null(s.worst->score);
  } else {
    j["worst_seed"] = nullptr;
    j["worst_dim"] = nullptr;
    j["worst_v"] = nullptr;
    j["worst_score"] = nullptr;
  }
  j["failing_trials"] = ordered_json::array();
  for (const auto& t : s.failing) j["failing_trials"].push_back(trial_json(t));
  j["not_applicable_reason"] = s.first_not_applicable_reason.empty()
                                   ? ordered_json(nullptr)
                                   : ordered_json(s.first_not_applicable_reason);
  return j;
}

ordered_json scalar_json(const ScalarSummary& s) {
  const auto& lemma = scalar_lemma(s.id);
  ordered_json j;
  j["lemma_id"] = lemma.name;
  j["anchor"] = lemma.anchor;
  j["statement"] = lemma.statement;
  j["kind"] = kind_name(lemma.kind);
  j["expected_failure"] = s.expected_failure;
  j["passed"] = s.passed;
  j["regions"] = ordered_json::array();
  for (const auto& r : s.regions)
    j["regions"].push_back({{"region", r.region},
                            {"points", r.points},
                            {"violations", r.violations},
                            {"worst", number_or_null(r.worst)},
                            {"worst_x", number_or_null(r.worst_x)},
                            {"worst_v", number_or_null(r.worst_v)},
                            {"tolerance", r.tolerance},
                            {"passed", r.passed}});
  j["derivative_checks"] = ordered_json::array();
  for (const auto& d : s.derivatives)
    j["derivative_checks"].push_back({{"function", d.function},
                                      {"region", d.region},
                                      {"points", d.points},
                                      {"mismatches", d.mismatches},
                                      {"sign_violations", d.sign_violations},
                                      {"anchor_violations", d.anchor_violations},
                                      {"worst_relative_error", number_or_null(d.worst_relative_error)},
                                      {"worst_x", number_or_null(d.worst_x)},
                                      {"worst_v", number_or_null(d.worst_v)},
                                      {"passed", d.passed}});
  return j;
}

ordered_json point_json(const CounterexamplePoint& p) {
  return {{"regime", p.regime},     {"x", p.x},           {"v", p.v},
          {"lhs", p.lhs},           {"rhs", p.rhs},       {"gap", p.gap},
          {"grid_x", p.grid_x},     {"grid_v", p.grid_v}, {"grid_gap", p.grid_gap},
          {"persists", p.persists}, {"certified", p.gap >= kCounterexampleThreshold && p.persists}};
}

ordered_json result_json(const CheckResult& r) {
  ordered_json j;
  j["check_id"] = check_info(r.id).name;
  j["applicable"] = r.applicable;
  j["reason"] = r.reason.empty() ? ordered_json(nullptr) : ordered_json(r.reason);
  j["low_signal"] = r.low_signal;
  j["passed"] = r.passed;
  j["tolerance"] = r.tolerance_used;
  j["min_margin"] = number_or_null(r.min_margin());
  j["min_sv_gap"] = number_or_null(r.min_sv_gap());
  j["max_residual"] = number_or_null(r.identity_residual);
  j["loewner_margins"] = ordered_json::array();
  for (const auto& m : r.loewner_margins)
    j["loewner_margins"].push_back({{"value", m.value}, {"scale", m.scale}});
  j["sv_gaps"] = ordered_json::array();
  for (const auto& g : r.sv_gaps) j["sv_gaps"].push_back({{"values", g.values}, {"scale", g.scale}});
  return j;
}

std::string csv_number(const std::optional<double>& x) {
  if (!x || !std::isfinite(*x)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", *x);
  return buf;
}

}  // namespace

std::string report_json(const SuiteReport& report) {
  ordered_json j;
  j["tool"] = "matmean";
  j["version"] = report.version;
  j["config"] = config_json(report.config);
  j["matrix_checks"] = ordered_json::array();
  for (const auto& c : report.checks) j["matrix_checks"].push_back(check_json(c));
  j["scalar_lemmas"] = ordered_json::array();
  for (const auto& s : report.scalars) j["scalar_lemmas"].push_back(scalar_json(s));
  ordered_json ce;
  ce["searched"] = report.counterexample_searched;
  ce["found"] = !report.counterexamples.empty();
  ce["points"] = ordered_json::array();
  for (const auto& p : report.counterexamples) ce["points"].push_back(point_json(p));
  j["counterexample"] = ce;
  long failures = 0;
  for (const auto& c : report.checks) failures += c.failures;
  j["summary"] = {{"matrix_checks", report.checks.size()},
                  {"scalar_lemmas", report.scalars.size()},
                  {"matrix_failures", failures},
                  {"failing_checks", report.failing_ids()},
                  {"exit_code", report.exit_code()}};
  return j.dump(2) + "\n";
}

std::string report_csv(const SuiteReport& report) {
  std::ostringstream out;
  out << "check_id,trials,applicable,failures,min_margin,min_sv_gap,max_residual,worst_seed\n";
  for (const auto& c : report.checks) {
    out << check_info(c.id).name << ',' << c.trials << ',' << c.applicable << ',' << c.failures
        << ',' << csv_number(c.min_margin) << ',' << csv_number(c.min_sv_gap) << ','
        << csv_number(c.max_residual) << ',';
    if (c.worst) out << c.worst->seed;
    out << '\n';
  }
  return out.str();
}

std::string check_result_json(const CheckResult& result, std::uint64_t seed, int dim, double v) {
  ordered_json j = result_json(result);
  j["seed"] = seed;
  j["dim"] = dim;
  j["v"] = v;
  return j.dump(2) + "\n";
}

std::string counterexample_json(const std::vector<CounterexamplePoint>& points,
                                const std::optional<CounterexamplePoint>& witness) {
  ordered_json j;
  j["found"] = !points.empty();
  j["points"] = ordered_json::array();
  for (const auto& p : points) j["points"].push_back(point_json(p));
  if (witness) j["witness"] = point_json(*witness);
  return j.dump(2) + "\n";
}

void write_report(const SuiteReport& report, const std::string& path, ReportFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open output path '" + path + "' for writing");
  out << (format == ReportFormat::Json ? report_json(report) : report_csv(report));
  out.flush();
  if (!out) throw std::runtime_error("failed writing output path '" + path + "'");
}

}  // namespace matmean
