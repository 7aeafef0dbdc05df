#include "matmean/scalar_lemmas.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace matmean {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Open lower end at 0.
constexpr double kTiny = std::numeric_limits<double>::min();

double sq(double t) { return t * t; }

// S_AMGM, with b = 1 and x = a/b >= 1 (every term is degree-1 homogeneous).
double amgm_lower(double x, double) { return sq(x - 1) / (8 * x); }
double amgm_middle(double x, double) { return (x + 1) / 2 - std::sqrt(x); }
double amgm_upper(double x, double) { return sq(x - 1) / 8; }

double sqrt_id_lhs(double x, double) { return (1 + x) / 2 - std::sqrt(x); }
double sqrt_id_rhs(double x, double) {
  return sq(1 - x) / 8 / (((1 + x) / 2 + std::sqrt(x)) / 2);
}

double young_gap(double x, double v) { return (1 - v) + v * x - std::pow(x, v); }
double lemma_v_lower(double x, double v) { return v * (1 - v) / (2 * x) * sq(x - 1); }
double lemma_v_upper(double x, double v) {
  return v * (1 - v) / 2 * sq(x - 1) * (2 * x / (x + 1));
}
double lemma_v2_lower(double x, double v) { return v * (1 - v) / 2 * sq(1 - x) / ((1 + x) / 2); }

double gh_lhs(double x, double) { return std::sqrt(x) - 1 / ((1 + 1 / x) / 2); }
double gh_rhs(double x, double) { return sq(1 - x) / (8 * std::sqrt(x)); }

double gh_v_lhs(double x, double v) { return std::pow(x, v) - 1 / (1 - v + v / x); }
double gh_v_rhs(double x, double v) { return v * (1 - v) / 2 * sq(1 - x) * std::pow(x, -v); }

double ah_id_lhs(double x, double) { return (1 + x) / 2 - 1 / ((1 + 1 / x) / 2); }
double ah_id_rhs(double x, double) { return sq(1 - x) / 4 / ((1 + x) / 2); }

double remark_rhs(double x, double v) { return v * (1 - v) / 2 * sq(x - 1) / std::sqrt(x); }

const Interval kAtLeastOne{1.0, kInf};
const Interval kUpToOne{kTiny, 1.0};
const Interval kPositive{kTiny, kInf};
const Interval kNonNegative{0.0, kInf};
const Interval kUnit{0.0, 1.0};
const Interval kUpperHalf{0.5, 1.0};
const Interval kLowerHalf{0.0, 0.5};

const std::vector<ScalarLemma>& table() {
  static const std::vector<ScalarLemma> lemmas = {
      {ScalarLemmaId::AmGm, "S_AMGM", "scalar AM-GM gap bounds",
       "(a-b)^2/(8a) <= (a+b)/2 - sqrt(ab) <= (a-b)^2/(8b), a >= b > 0", ScalarKind::Inequality,
       {{"a>=b", kAtLeastOne, std::nullopt}}, amgm_lower, amgm_middle, amgm_upper},
      {ScalarLemmaId::SqrtIdentity, "S_SQRT_ID", "scalar AM-GM gap identity",
       "(1+x)/2 - sqrt(x) = (1/8)(1-x)^2 (((1+x)/2 + sqrt(x))/2)^-1, x >= 0",
       ScalarKind::Identity, {{"x>=0", kNonNegative, std::nullopt}}, nullptr, sqrt_id_lhs,
       sqrt_id_rhs},
      {ScalarLemmaId::LemmaV, "S_LEMMA_V", "weighted Young gap, x >= 1",
       "v(1-v)/(2x) (x-1)^2 <= (1-v) + vx - x^v <= v(1-v)/2 (x-1)^2 (2x/(x+1)), x >= 1",
       ScalarKind::Inequality, {{"x>=1", kAtLeastOne, kUnit}}, lemma_v_lower, young_gap,
       lemma_v_upper},
      {ScalarLemmaId::LemmaVi, "S_LEMMA_VI", "weighted Young gap, 0 < x <= 1",
       "v(1-v)/2 (x-1)^2 (2x/(x+1)) <= (1-v) + vx - x^v <= v(1-v)/(2x) (x-1)^2, 0 < x <= 1",
       ScalarKind::Inequality, {{"0<x<=1", kUpToOne, kUnit}}, lemma_v_upper, young_gap,
       lemma_v_lower},
      {ScalarLemmaId::LemmaV2, "S_LEMMA_V2", "weighted Young gap lower bound",
       "(1-v) + vx - x^v >= v(1-v)/2 (1-x)^2 ((1+x)/2)^-1 for (i) x >= 1, 1/2 <= v <= 1 or "
       "(ii) 0 < x <= 1, 0 <= v <= 1/2",
       ScalarKind::Inequality,
       {{"i", kAtLeastOne, kUpperHalf}, {"ii", kUpToOne, kLowerHalf}}, lemma_v2_lower,
       young_gap, nullptr},
      {ScalarLemmaId::GeometricHarmonic, "S_GH", "scalar GM-HM gap bound",
       "sqrt(x) - ((1+1/x)/2)^-1 <= (1-x)^2 / (8 sqrt(x)), x > 0", ScalarKind::Inequality,
       {{"x>0", kPositive, std::nullopt}}, nullptr, gh_lhs, gh_rhs},
      {ScalarLemmaId::GeometricHarmonicWeighted, "S_GH_V",
       "weighted scalar GM-HM gap bound",
       "x^v - (1-v+v/x)^-1 <= v(1-v)/2 (1-x)^2 x^-v, x >= 1", ScalarKind::Inequality,
       {{"x>=1", kAtLeastOne, kUnit}}, nullptr, gh_v_lhs, gh_v_rhs},
      {ScalarLemmaId::ArithmeticHarmonicIdentity, "S_AH_ID", "scalar AM-HM gap identity",
       "(1+x)/2 - ((1+1/x)/2)^-1 = (1-x)^2/4 ((1+x)/2)^-1, x > 0", ScalarKind::Identity,
       {{"x>0", kPositive, std::nullopt}}, nullptr, ah_id_lhs, ah_id_rhs},
      {ScalarLemmaId::Remark, "S_REMARK", "weighted Young gap, sqrt(x) bound",
       "(1-v) + vx - x^v <= v(1-v)/2 (x-1)^2 / sqrt(x), expected to fail in (i) x >= 1, "
       "1/2 <= v <= 1 and (ii) 0 < x <= 1, 0 <= v <= 1/2",
       ScalarKind::ExpectedToFail,
       {{"i", kAtLeastOne, kUpperHalf}, {"ii", kUpToOne, kLowerHalf}}, nullptr, young_gap,
       remark_rhs},
  };
  return lemmas;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  if (n <= 0) return out;
  if (n == 1) return {lo};
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
  out.back() = hi;
  return out;
}

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> out = linspace(std::log(lo), std::log(hi), n);
  for (double& t : out) t = std::exp(t);
  if (!out.empty()) {
    out.front() = lo;
    out.back() = hi;
  }
  return out;
}

void require_inside(const ScalarLemma& lemma, const ScalarRegion& region, const GridSpec& grid) {
  const bool x_ok = !grid.x.empty() && region.x.contains(grid.x);
  bool v_ok = true;
  if (region.v) v_ok = grid.v && !grid.v->empty() && region.v->contains(*grid.v);
  if (!x_ok || !v_ok || grid.x_points < 1 || (region.v && grid.v_points < 1)) {
    std::ostringstream msg;
    msg << lemma.name << ": grid x=[" << grid.x.lo << ", " << grid.x.hi << "]";
    if (grid.v) msg << " v=[" << grid.v->lo << ", " << grid.v->hi << "]";
    msg << " lies outside region " << region.label;
    throw std::invalid_argument(msg.str());
  }
}

const ScalarRegion* region_for(const ScalarLemma& lemma, const GridSpec& grid) {
  for (const auto& r : lemma.regions) {
    const bool x_ok = r.x.contains(grid.x);
    const bool v_ok = !r.v || (grid.v && r.v->contains(*grid.v));
    if (x_ok && v_ok) return &r;
  }
  return nullptr;
}

}  // namespace

std::span<const ScalarLemma> scalar_lemmas() { return table(); }

const ScalarLemma& scalar_lemma(ScalarLemmaId id) {
  for (const auto& l : table())
    if (l.id == id) return l;
  throw std::invalid_argument("scalar_lemma: unknown id");
}

std::optional<ScalarLemmaId> parse_scalar_lemma(std::string_view name) {
  for (const auto& l : table())
    if (l.name == name) return l.id;
  return std::nullopt;
}

std::vector<double> GridSpec::x_nodes() const {
  return log_x ? logspace(x.lo, x.hi, x_points) : linspace(x.lo, x.hi, x_points);
}

std::vector<double> GridSpec::v_nodes() const {
  if (!v) return {NAN};
  if (!open_v) return linspace(v->lo, v->hi, v_points);
  std::vector<double> out;
  for (int k = 1; k <= v_points; ++k) out.push_back(v->lo + (v->hi - v->lo) * k / (v_points + 1));
  return out;
}

GridSpec default_grid(const ScalarRegion& region) {
  GridSpec g;
  g.x = {std::max(1e-3, region.x.lo), std::min(1e3, region.x.hi)};
  g.v = region.v;
  return g;
}

ScalarCheckResult check_scalar_lemma(ScalarLemmaId id, const GridSpec& grid, double tol) {
  const auto& lemma = scalar_lemma(id);
  const ScalarRegion* region = region_for(lemma, grid);
  if (!region) require_inside(lemma, lemma.regions.front(), grid);
  require_inside(lemma, *region, grid);

  ScalarCheckResult out;
  out.id = id;
  out.region = std::string(region->label);
  out.tolerance = tol;
  const auto xs = grid.x_nodes();
  const auto vs = grid.v_nodes();
  for (double v : vs) {
    for (double x : xs) {
      const double m = lemma.middle(x, v);
      const double l = lemma.lower ? lemma.lower(x, v) : NAN;
      const double u = lemma.upper ? lemma.upper(x, v) : NAN;
      double scale = std::max(1.0, std::abs(m));
      if (lemma.lower) scale = std::max(scale, std::abs(l));
      if (lemma.upper) scale = std::max(scale, std::abs(u));

      double violation;
      if (lemma.kind == ScalarKind::Identity) {
        violation = std::abs(m - u) / scale;
      } else {
        violation = -INFINITY;
        if (lemma.lower) violation = std::max(violation, (l - m) / scale);
        if (lemma.upper) violation = std::max(violation, (m - u) / scale);
      }
      ++out.points;
      if (!std::isfinite(violation) || violation > tol) ++out.violations;
      if (!(violation <= out.worst)) {
        out.worst = std::isfinite(violation) ? violation : INFINITY;
        out.worst_x = x;
        out.worst_v = v;
      }
    }
  }
  out.passed = out.violations == 0;
  return out;
}

std::vector<ScalarCheckResult> check_scalar_lemma_default(ScalarLemmaId id, double tol) {
  std::vector<ScalarCheckResult> out;
  for (const auto& region : scalar_lemma(id).regions)
    out.push_back(check_scalar_lemma(id, default_grid(region), tol));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

using LD = long double;

// Auxiliary functions for S_LEMMA_V and S_LEMMA_VI.
LD proof_g(LD x, LD v) {
  return 2 * std::pow(x, v + 1) + v * (1 - v) * (x - 1) * (x - 1) - 2 * (1 - v) * x -
         2 * v * x * x;
}
double proof_g_first(double x, double v) {
  return 2 * (v + 1) * std::pow(x, v) - 2 * v * x - 2 * v * v * x + 2 * v * v - 2;
}
// Unsimplified derivative used for S_LEMMA_VI.
double proof_g_first_unsimplified(double x, double v) {
  return 2 * (v + 1) * std::pow(x, v) + 2 * v * (1 - v) * (x - 1) - 2 * (1 - v) - 4 * v * x;
}
double proof_g_second(double x, double v) { return 2 * v * (v + 1) * (std::pow(x, v - 1) - 1); }

LD proof_f(LD x, LD v) {
  return (1 - v) * (1 + 1 / x) + v * (x + 1) - std::pow(x, v - 1) * (x + 1) -
         v * (1 - v) * (x - 1) * (x - 1);
}
double proof_f_first(double x, double v) {
  return (std::pow(x, v) + 2 * v * v * (x - 1) * x * x - 1 -
          v * (std::pow(x, v + 1) + std::pow(x, v) + 2 * x * x * x - 3 * x * x - 1)) /
         (x * x);
}
double proof_f_second(double x, double v) {
  return (1 - v) * (2 * std::pow(x, -3.0) * (1 - std::pow(x, v)) +
                    v * (std::pow(x, v - 2) + std::pow(x, v - 3) - 2));
}

// Auxiliary f and g(v) for S_LEMMA_V2.
LD proof_v2_f(LD x, LD v) {
  return (1 - v) + v * x - std::pow(x, v) - v * (1 - v) / 2 * (1 - x) * (1 - x) / ((1 + x) / 2);
}
double proof_v2_f_second(double x, double v) {
  return v * (1 - v) * (std::pow(x, v - 2) - 8 / std::pow(1 + x, 3.0));
}
LD proof_v2_g(LD x, LD v) { return std::pow(x, v - 2) - 8 / std::pow(1 + x, LD(3)); }
double proof_v2_g_dv(double x, double v) { return std::pow(x, v - 2) * std::log(x); }

// Auxiliary function for S_GH.
LD proof_gh_f(LD x, LD) {
  return std::sqrt(x) - 1 / ((1 + 1 / x) / 2) - (1 - x) * (1 - x) / (8 * std::sqrt(x));
}
double proof_gh_f_second(double x, double) {
  return (128 / std::pow(1 + x, 3.0) - (3 + x) * (1 + 3 * x) / std::pow(x, 2.5)) / 32;
}

struct Stencil {
  LD first;
  LD second;
};

Stencil central(const std::function<LD(LD, LD)>& f, LD x, LD v, bool in_v) {
  const LD h = kFiniteDifferenceStep;
  const LD fm = in_v ? f(x, v - h) : f(x - h, v);
  const LD f0 = f(x, v);
  const LD fp = in_v ? f(x, v + h) : f(x + h, v);
  return {(fp - fm) / (2 * h), (fp - 2 * f0 + fm) / (h * h)};
}

}  // namespace

std::vector<DerivativeSet> closed_form_derivatives(ScalarLemmaId id) {
  const auto& lemma = scalar_lemma(id);
  switch (id) {
    case ScalarLemmaId::LemmaV:
      return {{id, lemma.regions[0],
               {{"S_LEMMA_V.g", proof_g, proof_g_first, proof_g_second, -1, {1.0}},
                {"S_LEMMA_V.f", proof_f, proof_f_first, proof_f_second, -1, {1.0}}}}};
    case ScalarLemmaId::LemmaVi:
      return {{id, lemma.regions[0],
               {{"S_LEMMA_VI.f", proof_f, proof_f_first, proof_f_second, +1, {1.0}},
                {"S_LEMMA_VI.g", proof_g, proof_g_first_unsimplified, proof_g_second, +1, {1.0}}}}};
    case ScalarLemmaId::LemmaV2: {
      std::vector<DerivativeSet> out;
      for (const auto& region : lemma.regions) {
        ProofFunction f{"S_LEMMA_V2.f", proof_v2_f, {}, proof_v2_f_second, +1, {1.0}};
        ProofFunction g{"S_LEMMA_V2.g(v)", proof_v2_g, proof_v2_g_dv, {}, 0, {}};
        g.in_v = true;
        g.value_sign = +1;
        out.push_back({id, region, {f, g}});
      }
      return out;
    }
    case ScalarLemmaId::GeometricHarmonic:
      return {{id, lemma.regions[0],
               {{"S_GH.f", proof_gh_f, {}, proof_gh_f_second, -1, {1.0}}}}};
    default:
      return {};
  }
}

GridSpec derivative_grid(const ScalarRegion& region) {
  GridSpec g;
  g.x = {std::max(1.0 / 16, region.x.lo), std::min(16.0, region.x.hi)};
  g.v = region.v;
  g.x_points = 400;
  g.v_points = 19;
  return g;
}

std::vector<DerivativeCheckResult> check_derivative_formulas(ScalarLemmaId id) {
  std::vector<DerivativeCheckResult> out;
  for (const auto& set : closed_form_derivatives(id)) {
    auto part = check_derivative_formulas(id, derivative_grid(set.region));
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::vector<DerivativeCheckResult> check_derivative_formulas(ScalarLemmaId id,
                                                             const GridSpec& grid) {
  const auto sets = closed_form_derivatives(id);
  if (sets.empty()) {
    throw std::invalid_argument(std::string(scalar_lemma(id).name) +
                                ": the proof states no closed-form derivatives");
  }
  const DerivativeSet* set = nullptr;
  for (const auto& s : sets) {
    if (s.region.x.contains(grid.x) && (!s.region.v || (grid.v && s.region.v->contains(*grid.v))))
      set = &s;
  }
  if (!set) require_inside(scalar_lemma(id), sets.front().region, grid);

  // Interior nodes only, so every stencil stays inside the domain.
  auto xs = grid.x_nodes();
  if (xs.size() > 2) xs = std::vector<double>(xs.begin() + 1, xs.end() - 1);
  const auto vs = grid.v_nodes();
  const double tol = kFiniteDifferenceTolerance;

  std::vector<DerivativeCheckResult> out;
  for (const auto& fn : set->functions) {
    DerivativeCheckResult r;
    r.id = id;
    r.function = std::string(fn.name);
    r.region = std::string(set->region.label);

    auto compare = [&](double closed, long double fd, double x, double v) {
      const double err = std::abs(static_cast<double>(fd) - closed) / std::max(1.0, std::abs(closed));
      if (!(err <= tol)) ++r.mismatches;
      if (!(err <= r.worst_relative_error)) {
        r.worst_relative_error = err;
        r.worst_x = x;
        r.worst_v = v;
      }
    };

    for (double v : vs) {
      for (double x : xs) {
        ++r.points;
        const Stencil s = central(fn.value, x, v, fn.in_v);
        if (fn.first) compare(fn.first(x, v), s.first, x, v);
        if (fn.second) {
          const double closed = fn.second(x, v);
          compare(closed, s.second, x, v);
          if (fn.second_sign != 0 && fn.second_sign * closed < -1e-12 * std::max(1.0, std::abs(closed)))
            ++r.sign_violations;
        }
        if (fn.value_sign != 0) {
          const double value = static_cast<double>(fn.value(x, v));
          if (fn.value_sign * value < -1e-12 * std::max(1.0, std::abs(value))) ++r.sign_violations;
        }
      }
      for (double z : fn.zero_points) {
        if (!set->region.x.contains(z)) continue;
        const double value = static_cast<double>(fn.value(z, v));
        const Stencil s = central(fn.value, z, v, fn.in_v);
        if (std::abs(value) > 1e-12) ++r.anchor_violations;
        if (std::abs(static_cast<double>(s.first)) > tol) ++r.anchor_violations;
        if (fn.first && std::abs(fn.first(z, v)) > 1e-12) ++r.anchor_violations;
      }
    }
    r.passed = r.mismatches == 0 && r.sign_violations == 0 && r.anchor_violations == 0;
    out.push_back(std::move(r));
  }
  return out;
}

double gh_polynomial_identity_residual(double x) {
  using LDv = long double;
  const LDv X = x;
  const LDv big = (3 + X) * (1 + 3 * X) * std::pow(1 + X, LDv(3));
  const LDv lhs = big * big - LDv(128) * 128 * std::pow(X, LDv(5));
  static constexpr std::array<LDv, 9> coeffs = {9, 132, 868, 3452, 9510, 3452, 868, 132, 9};
  LDv poly = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) poly = poly * X + *it;
  const LDv rhs = (X - 1) * (X - 1) * poly;
  return static_cast<double>(std::abs(lhs - rhs) / std::max<LDv>(1, big * big));
}

// ---------------------------------------------------------------------------

RemarkParts remark_parts(double x, double v) { return {young_gap(x, v), remark_rhs(x, v)}; }

namespace {

std::string remark_regime(Interval x, Interval v) {
  if (x.lo >= 1.0 && v.lo >= 0.5 && v.hi <= 1.0) return "i";
  if (x.lo > 0.0 && x.hi <= 1.0 && v.lo >= 0.0 && v.hi <= 0.5) return "ii";
  return {};
}

// Golden-section maximization of f on [lo, hi].
template <typename F>
double golden_max(F&& f, double lo, double hi, int iterations) {
  const double inv_phi = (std::sqrt(5.0) - 1) / 2;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iterations; ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc > fd ? c : d;
}

}  // namespace

std::optional<CounterexamplePoint> search_remark_counterexample(Interval x_range,
                                                                Interval v_range,
                                                                int resolution) {
  if (x_range.empty() || v_range.empty() || resolution < 2)
    throw std::invalid_argument("search_remark_counterexample: empty range or resolution < 2");
  const std::string regime = remark_regime(x_range, v_range);
  if (regime.empty()) {
    throw std::invalid_argument(
        "search_remark_counterexample: ranges must lie in regime (i) x >= 1, v in [1/2, 1] "
        "or regime (ii) x in (0, 1], v in [0, 1/2]");
  }

  const auto xs = linspace(x_range.lo, x_range.hi, resolution);
  const auto vs = linspace(v_range.lo, v_range.hi, resolution);
  double best = -INFINITY;
  std::size_t bi = 0, bj = 0;
  for (std::size_t j = 0; j < vs.size(); ++j) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double g = remark_parts(xs[i], vs[j]).gap();
      if (g > best) {
        best = g;
        bi = i;
        bj = j;
      }
    }
  }
  if (!(best > kCounterexampleThreshold)) return std::nullopt;

  CounterexamplePoint p;
  p.regime = regime;
  p.grid_x = xs[bi];
  p.grid_v = vs[bj];
  p.grid_gap = best;

  // Stay inside the grid cell around the best node.
  const Interval x_cell{xs[bi > 0 ? bi - 1 : bi], xs[std::min(bi + 1, xs.size() - 1)]};
  const Interval v_cell{vs[bj > 0 ? bj - 1 : bj], vs[std::min(bj + 1, vs.size() - 1)]};
  double x = p.grid_x, v = p.grid_v, gap = best;
  constexpr int kIterations = 60;
  for (int cycle = 0; cycle < 8; ++cycle) {
    const double prev = gap;
    const double nx = golden_max([&](double t) { return remark_parts(t, v).gap(); }, x_cell.lo,
                                 x_cell.hi, kIterations);
    if (remark_parts(nx, v).gap() > gap) {
      x = nx;
      gap = remark_parts(x, v).gap();
    }
    const double nv = golden_max([&](double t) { return remark_parts(x, t).gap(); }, v_cell.lo,
                                 v_cell.hi, kIterations);
    if (remark_parts(x, nv).gap() > gap) {
      v = nv;
      gap = remark_parts(x, v).gap();
    }
    if (gap - prev <= 1e-16) break;
  }
  const auto parts = remark_parts(x, v);
  p.x = x;
  p.v = v;
  p.lhs = parts.lhs;
  p.rhs = parts.rhs;
  p.gap = parts.gap();
  p.persists = remark_violation_persists(x, v, x_range, v_range, resolution, 4);
  return p;
}

bool remark_violation_persists(double x, double v, Interval x_range, Interval v_range,
                               int resolution, int factor) {
  const int fine = factor * (resolution - 1) + 1;
  auto nearest = [fine](double t, Interval r) {
    if (r.hi == r.lo) return r.lo;
    const double step = (r.hi - r.lo) / (fine - 1);
    const double k = std::clamp(std::round((t - r.lo) / step), 0.0, double(fine - 1));
    return r.lo + k * step;
  };
  return remark_parts(nearest(x, x_range), nearest(v, v_range)).gap() > kCounterexampleThreshold;
}

}  // namespace matmean
