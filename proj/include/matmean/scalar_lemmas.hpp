#pragma once

// Scalar inequalities and identities behind the matrix results: dense-grid
// verification, finite-difference checks of the closed-form derivatives
// used in their proofs, and the counterexample search for the one
// inequality that is expected to fail.

#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace matmean {

enum class ScalarLemmaId {
  AmGm,                        // S_AMGM
  SqrtIdentity,                // S_SQRT_ID
  LemmaV,                      // S_LEMMA_V
  LemmaVi,                     // S_LEMMA_VI
  LemmaV2,                     // S_LEMMA_V2
  GeometricHarmonic,           // S_GH
  GeometricHarmonicWeighted,   // S_GH_V
  ArithmeticHarmonicIdentity,  // S_AH_ID
  Remark,                      // S_REMARK
};

enum class ScalarKind { Inequality, Identity, ExpectedToFail };

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double t) const { return t >= lo && t <= hi; }
  bool contains(const Interval& o) const { return o.lo >= lo && o.hi <= hi; }
  bool empty() const { return !(lo <= hi); }
};

/// One connected piece of a lemma's hypothesis. `v` is absent for
/// statements that carry no weight.
struct ScalarRegion {
  std::string_view label;
  Interval x;
  std::optional<Interval> v;
};

using ScalarMap = double (*)(double x, double v);

/// lower <= middle <= upper; identities use middle == upper.
struct ScalarLemma {
  ScalarLemmaId id;
  std::string_view name;
  std::string_view anchor;
  std::string_view statement;
  ScalarKind kind;
  std::vector<ScalarRegion> regions;
  ScalarMap lower = nullptr;
  ScalarMap middle = nullptr;
  ScalarMap upper = nullptr;
};

std::span<const ScalarLemma> scalar_lemmas();
const ScalarLemma& scalar_lemma(ScalarLemmaId id);
std::optional<ScalarLemmaId> parse_scalar_lemma(std::string_view name);

struct GridSpec {
  Interval x;
  std::optional<Interval> v;
  int x_points = 2000;
  int v_points = 99;
  bool log_x = true;
  // Drop the v endpoints, where the weighted statements collapse to 0 <= 0.
  bool open_v = true;

  std::vector<double> x_nodes() const;
  std::vector<double> v_nodes() const;
};

/// x log-spaced over [1e-3, 1e3] intersected with the region, 2000 x 99.
GridSpec default_grid(const ScalarRegion& region);

struct ScalarCheckResult {
  ScalarLemmaId id;
  std::string region;
  long points = 0;
  long violations = 0;
  // Largest normalized violation: max(lower - middle, middle - upper) / scale
  // for inequalities, |middle - upper| / scale for identities.
  double worst = -INFINITY;
  double worst_x = NAN;
  double worst_v = NAN;
  double tolerance = 0.0;
  bool passed = false;
};

inline constexpr double kScalarTolerance = 1e-12;

/// Evaluates the lemma on every grid node; throws std::invalid_argument when
/// the grid leaves the region's domain.
ScalarCheckResult check_scalar_lemma(ScalarLemmaId id, const GridSpec& grid,
                                     double tol = kScalarTolerance);

/// Runs every region of the lemma on its default grid.
std::vector<ScalarCheckResult> check_scalar_lemma_default(ScalarLemmaId id,
                                                          double tol = kScalarTolerance);

// ---------------------------------------------------------------------------
// Closed-form derivatives from the proofs.

/// One auxiliary function from a proof together with the closed forms the
/// proof states for it. Functions are templated on the floating type so the
/// finite-difference oracle can run in extended precision.
struct ProofFunction {
  std::string_view name;  // e.g. "S_LEMMA_V.g"
  std::function<long double(long double, long double)> value;
  std::function<double(double, double)> first;   // may be empty
  std::function<double(double, double)> second;  // may be empty
  // Sign the proof claims for the second derivative on the region: +1 for
  // >= 0, -1 for <= 0, 0 for no claim.
  int second_sign = 0;
  // Points where the proof claims value (and first derivative, when given)
  // vanish.
  std::vector<double> zero_points;
  // Differentiate in v instead of x (used for S_LEMMA_V2).
  bool in_v = false;
  // Sign the proof claims for the function value itself, 0 for none.
  int value_sign = 0;
};

struct DerivativeSet {
  ScalarLemmaId id;
  ScalarRegion region;
  std::vector<ProofFunction> functions;
};

/// Closed forms attached to a lemma's proof (empty if the proof gives none).
std::vector<DerivativeSet> closed_form_derivatives(ScalarLemmaId id);

struct DerivativeCheckResult {
  ScalarLemmaId id;
  std::string function;
  std::string region;
  long points = 0;
  long mismatches = 0;      // |fd - closed| > tol * max(1, |closed|)
  long sign_violations = 0;
  long anchor_violations = 0;
  double worst_relative_error = 0.0;
  double worst_x = NAN;
  double worst_v = NAN;
  bool passed = false;
};

inline constexpr double kFiniteDifferenceStep = 1e-5;
inline constexpr double kFiniteDifferenceTolerance = 1e-5;

/// Grid for the derivative checks: x log-spaced over [1/16, 16] strictly
/// inside the region, 400 x 19.
GridSpec derivative_grid(const ScalarRegion& region);

std::vector<DerivativeCheckResult> check_derivative_formulas(ScalarLemmaId id);
std::vector<DerivativeCheckResult> check_derivative_formulas(ScalarLemmaId id,
                                                             const GridSpec& grid);

/// Right side minus left side of the degree-8 factorization used for the
/// geometric-harmonic lemma, relative to the size of the left side.
double gh_polynomial_identity_residual(double x);

// ---------------------------------------------------------------------------
// Counterexample search for (1-v) + vx - x^v <= v(1-v)/2 (x-1)^2 / sqrt(x).

struct RemarkParts {
  double lhs;
  double rhs;
  double gap() const { return lhs - rhs; }
};
RemarkParts remark_parts(double x, double v);

struct CounterexamplePoint {
  std::string regime;  // "i" or "ii"
  double x = NAN;
  double v = NAN;
  double lhs = NAN;
  double rhs = NAN;
  double gap = NAN;
  double grid_x = NAN;  // best grid node before refinement
  double grid_v = NAN;
  double grid_gap = NAN;
  bool persists = false;  // still a violation at 4x grid resolution
};

inline constexpr double kCounterexampleThreshold = 1e-9;

/// Scans a resolution x resolution grid over the ranges, then refines the
/// best node by coordinate-wise golden-section ascent inside its grid cell.
/// Ranges must lie within regime (i) x >= 1, v in [1/2, 1] or regime (ii)
/// x in (0, 1], v in [0, 1/2]. Returns nullopt if no node violates by more
/// than kCounterexampleThreshold.
std::optional<CounterexamplePoint> search_remark_counterexample(Interval x_range,
                                                                Interval v_range,
                                                                int resolution);

/// True when the grid node nearest (x, v) on a grid `factor` times finer than
/// `resolution` still violates by more than kCounterexampleThreshold.
bool remark_violation_persists(double x, double v, Interval x_range, Interval v_range,
                               int resolution, int factor = 4);

}  // namespace matmean
