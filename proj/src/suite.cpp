#include "matmean/suite.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace matmean {

std::string_view to_string(ReportFormat f) { return f == ReportFormat::Json ? "json" : "csv"; }

std::optional<ReportFormat> parse_format(std::string_view s) {
  if (s == "json" || s == "JSON") return ReportFormat::Json;
  if (s == "csv" || s == "CSV") return ReportFormat::Csv;
  return std::nullopt;
}

std::uint64_t default_master_seed() {
  const char* env = std::getenv("MATMEAN_SEED");
  if (!env || !*env) return kDefaultMasterSeed;
  std::uint64_t value = 0;
  const std::string_view s(env);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return kDefaultMasterSeed;
  return value;
}

namespace {

bool known_id(std::string_view id) {
  return parse_check(id).has_value() || parse_scalar_lemma(id).has_value();
}

bool selected(const SuiteConfig& c, std::string_view id) {
  return c.checks.empty() || std::find(c.checks.begin(), c.checks.end(), id) != c.checks.end();
}

}  // namespace

void SuiteConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("trials: must be >= 1");
  if (dims.empty()) throw std::invalid_argument("dims: must be nonempty");
  for (int d : dims)
    if (d < 1) throw std::invalid_argument("dims: every dimension must be >= 1");
  if (v_grid.empty()) throw std::invalid_argument("v_grid: must be nonempty");
  for (double v : v_grid)
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("v_grid: weights must lie in [0, 1]");
  if (!(tol_rel > 0) || !std::isfinite(tol_rel))
    throw std::invalid_argument("tol_rel: must be finite and > 0");
  for (const auto& id : checks)
    if (!known_id(id)) throw std::invalid_argument("checks: unknown check id '" + id + "'");
  if (spectrum && (!(spectrum->lo > 0) || !(spectrum->lo <= spectrum->hi) ||
                   !std::isfinite(spectrum->hi)))
    throw std::invalid_argument("spectrum: must satisfy 0 < lo <= hi < inf");
  if (threads < 0) throw std::invalid_argument("threads: must be >= 0");
}

std::vector<RemarkSearch> default_remark_searches() {
  return {{{1.0, 2.0}, {0.5, 1.0}, 200}, {{1e-3, 1.0}, {0.0, 0.5}, 200}};
}

std::optional<Relation> trial_relation(MatrixCheckId id, double v, std::uint64_t seed) {
  const auto& info = check_info(id);
  std::vector<Relation> options;
  for (const auto& c : info.cases)
    if (!info.weighted || c.v.contains(v)) options.push_back(c.relation);
  if (options.empty()) return std::nullopt;
  return options[seed % options.size()];
}

std::uint64_t trial_seed(std::uint64_t master, MatrixCheckId id, std::uint64_t t) {
  return derive_seed(master, static_cast<std::uint64_t>(check_ordinal(id)), t);
}

MatrixInstance make_trial_instance(MatrixCheckId id, std::uint64_t seed, int dim, double v,
                                   SpectrumRange spectrum) {
  const Weight w(check_info(id).weighted ? v : 0.5);
  const auto rel = trial_relation(id, w.value(), seed);
  if (!rel) throw std::invalid_argument("make_trial_instance: v outside the check's hypothesis");
  GenSpec spec;
  spec.dim = dim;
  spec.spectrum = spectrum;
  spec.seed = seed;
  switch (*rel) {
    case Relation::None: spec.relation = GenRelation::None; break;
    case Relation::BLeqA: spec.relation = GenRelation::BLeqA; break;
    case Relation::ALeqB: spec.relation = GenRelation::ALeqB; break;
  }
  return random_instance(spec, w);
}

namespace {

CheckResult run_trial(MatrixCheckId id, std::uint64_t seed, int dim, double v, double tol,
                      SpectrumRange spectrum) {
  const auto& info = check_info(id);
  if (info.weighted && !trial_relation(id, v, seed)) {
    CheckResult r;
    r.id = id;
    r.tolerance_used = tol;
    std::ostringstream msg;
    msg << "v = " << v << " outside the hypothesis";
    r.reason = msg.str();
    return r;
  }
  try {
    return evaluate_check(id, make_trial_instance(id, seed, dim, v, spectrum), tol);
  } catch (const std::runtime_error& e) {
    CheckResult r;
    r.id = id;
    r.tolerance_used = tol;
    r.reason = std::string("instance generation failed: ") + e.what();
    return r;
  }
}

struct WorkItem {
  std::size_t check;
  std::uint64_t seed;
  int dim;
  double v;
};

template <typename F>
void parallel_for(std::size_t n, int threads, F&& body) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers =
      std::min<std::size_t>(n, threads > 0 ? static_cast<std::size_t>(threads) : hw);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
  for (auto& t : pool) t.join();
}

void fold(CheckSummary& s, const WorkItem& item, const CheckResult& r) {
  ++s.trials;
  if (!r.applicable) {
    ++s.not_applicable;
    if (s.first_not_applicable_reason.empty()) s.first_not_applicable_reason = r.reason;
    return;
  }
  ++s.applicable;
  if (r.low_signal) ++s.low_signal;
  auto take_min = [](std::optional<double>& slot, double x) {
    if (std::isfinite(x)) slot = slot ? std::min(*slot, x) : x;
  };
  take_min(s.min_margin, r.min_margin());
  take_min(s.min_sv_gap, r.min_sv_gap());
  if (r.identity_residual)
    s.max_residual = s.max_residual ? std::max(*s.max_residual, *r.identity_residual)
                                    : *r.identity_residual;
  const TrialRecord rec{item.seed, item.dim, item.v, r.score()};
  if (!s.worst || rec.score < s.worst->score) s.worst = rec;
  if (!r.passed) {
    ++s.failures;
    if (s.failing.size() < kFailingTrialLimit) s.failing.push_back(rec);
  }
}

ScalarSummary run_scalar(ScalarLemmaId id) {
  ScalarSummary s;
  s.id = id;
  s.expected_failure = scalar_lemma(id).kind == ScalarKind::ExpectedToFail;
  s.regions = check_scalar_lemma_default(id);
  s.derivatives = check_derivative_formulas(id);
  if (s.expected_failure) {
    s.passed = std::any_of(s.regions.begin(), s.regions.end(),
                           [](const auto& r) { return r.violations > 0; });
  } else {
    s.passed = std::all_of(s.regions.begin(), s.regions.end(), [](const auto& r) { return r.passed; }) &&
               std::all_of(s.derivatives.begin(), s.derivatives.end(),
                           [](const auto& d) { return d.passed; });
  }
  return s;
}

}  // namespace

SuiteReport run_suite(const SuiteConfig& config) {
  config.validate();
  SuiteReport report;
  report.config = config;
  report.version = MATMEAN_VERSION;
  const SpectrumRange spectrum = config.spectrum_or_default();

  if (config.run_matrix) {
    std::vector<WorkItem> items;
    for (const auto& info : list_checks()) {
      if (!selected(config, info.name)) continue;
      const std::size_t slot = report.checks.size();
      CheckSummary summary;
      summary.id = info.id;
      report.checks.push_back(std::move(summary));
      const std::vector<double> vs = info.weighted ? config.v_grid : std::vector<double>{0.5};
      std::uint64_t t = 0;
      for (int dim : config.dims)
        for (double v : vs)
          for (int trial = 0; trial < config.trials; ++trial, ++t)
            items.push_back({slot, trial_seed(config.master_seed, info.id, t), dim, v});
    }
    std::vector<CheckResult> results(items.size());
    parallel_for(items.size(), config.threads, [&](std::size_t i) {
      const auto& it = items[i];
      results[i] = run_trial(report.checks[it.check].id, it.seed, it.dim, it.v, config.tol_rel,
                             spectrum);
    });
    for (std::size_t i = 0; i < items.size(); ++i) fold(report.checks[items[i].check], items[i], results[i]);
  }

  if (config.run_scalar) {
    for (const auto& lemma : scalar_lemmas())
      if (selected(config, lemma.name)) report.scalars.push_back(run_scalar(lemma.id));
  }

  if (config.run_counterexample && selected(config, scalar_lemma(ScalarLemmaId::Remark).name)) {
    report.counterexample_searched = true;
    for (const auto& s : default_remark_searches())
      if (auto p = search_remark_counterexample(s.x, s.v, s.resolution)) report.counterexamples.push_back(*p);
  }
  return report;
}

CounterexamplePoint remark_witness(double x, double v, Interval x_range, Interval v_range,
                                   int resolution) {
  CounterexamplePoint p;
  p.regime = v >= 0.5 ? "i" : "ii";
  p.x = p.grid_x = x;
  p.v = p.grid_v = v;
  const auto parts = remark_parts(x, v);
  p.lhs = parts.lhs;
  p.rhs = parts.rhs;
  p.gap = p.grid_gap = parts.gap();
  p.persists = p.gap > kCounterexampleThreshold &&
               remark_violation_persists(x, v, x_range, v_range, resolution);
  return p;
}

int SuiteReport::exit_code() const { return failing_ids().empty() ? 0 : 1; }

std::vector<std::string> SuiteReport::failing_ids() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (c.failures > 0) out.emplace_back(check_info(c.id).name);
  for (const auto& s : scalars)
    if (!s.expected_failure && !s.passed) out.emplace_back(scalar_lemma(s.id).name);
  return out;
}

CheckResult replay(MatrixCheckId id, std::uint64_t seed, int dim, double v, double tol_rel,
                   SpectrumRange spectrum) {
  if (dim < 1) throw std::invalid_argument("replay: dim must be >= 1");
  if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("replay: v must lie in [0, 1]");
  return run_trial(id, seed, dim, check_info(id).weighted ? v : 0.5, tol_rel, spectrum);
}

CheckResult replay(std::string_view check_id, std::uint64_t seed, int dim, double v,
                   double tol_rel, SpectrumRange spectrum) {
  const auto id = parse_check(check_id);
  if (!id) throw std::invalid_argument("replay: unknown check id '" + std::string(check_id) + "'");
  return replay(*id, seed, dim, v, tol_rel, spectrum);
}

}  // namespace matmean
