#pragma once

// Every matrix-level statement as a named check: a hypothesis plus chains of
// Hermitian expressions whose Loewner order, singular values, or equality is
// measured on an instance.

#include "matmean/instance.hpp"
#include "matmean/scalar_lemmas.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace matmean {

enum class MatrixCheckId {
  Chain,        // M_CHAIN
  Between,      // M_BETWEEN
  Gumus,        // M_GUMUS
  Hirz,         // M_HIRZ
  Thm1,         // M_THM1
  Identity1,    // M_ID1
  SjAg,         // M_SJ_AG
  RefineAg,     // M_REFINE_AG
  Sandwich,     // M_SANDWICH
  Thm12,        // M_THM12
  Thm13,        // M_THM13
  SjV,          // M_SJ_V
  Cor25,        // M_COR25
  SjCor25,      // M_SJ_COR25
  Gh,           // M_GH
  GhSj,         // M_GH_SJ
  GhV,          // M_GH_V
  GhVSj,        // M_GH_V_SJ
  Ah,           // M_AH
};

inline constexpr int kMatrixCheckCount = 19;

/// One admissible (relation, weight range) combination.
struct HypothesisCase {
  Relation relation;
  Interval v;
};

struct CheckInfo {
  MatrixCheckId id;
  std::string_view name;
  std::string_view anchor;
  std::string_view hypothesis;
  // Statement is for a fixed v = 1/2.
  bool weighted;
  std::vector<HypothesisCase> cases;
  bool needs_invertible_difference = false;
  // Counterpart scalar statement, if the check lifts one by functional calculus.
  std::optional<ScalarLemmaId> scalar;
};

std::span<const CheckInfo> list_checks();
const CheckInfo& check_info(MatrixCheckId id);
std::optional<MatrixCheckId> parse_check(std::string_view name);
int check_ordinal(MatrixCheckId id);

enum class ChainKind { Loewner, Singular, Identity };

/// Ordered expressions, smallest first (for Identity: left side, right side).
struct EvaluatedChain {
  ChainKind kind;
  std::vector<std::string> labels;
  std::vector<HermitianMatrix> terms;
};

/// lambda_min(R - L) with its normalization max(1, ||L||_2, ||R||_2).
struct Margin {
  double value = 0.0;
  double scale = 1.0;
  double normalized() const { return value / scale; }
};

/// s_j(R) - s_j(L) for every j.
struct SingularGap {
  std::vector<double> values;
  double scale = 1.0;
  double min_normalized() const;
};

struct CheckResult {
  MatrixCheckId id;
  bool applicable = false;
  std::string reason;        // why not applicable
  bool low_signal = false;   // ||A-B||_2 < 1e-10 ||A||_2
  std::vector<Margin> loewner_margins;
  std::vector<SingularGap> sv_gaps;
  std::optional<double> identity_residual;  // normalized
  bool passed = false;
  double tolerance_used = 0.0;

  /// Smallest normalized margin / gap (+inf when none), largest residual
  /// (-inf when none).
  double min_margin() const;
  double min_sv_gap() const;
  double max_residual() const;
  /// Most negative of min margin, min sv gap and minus the residual.
  double score() const;
};

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr double kLowSignalRatio = 1e-10;

/// Whether the instance satisfies the check's relation and weight range.
bool hypothesis_holds(MatrixCheckId id, const MatrixInstance& inst);

/// Builds the check's expression chains; throws on hypothesis mismatch or
/// numerically singular intermediates.
std::vector<EvaluatedChain> evaluate_chains(MatrixCheckId id, const MatrixInstance& inst);

/// Margins, per-index singular-value gaps and identity residuals for the
/// check. Never throws for numerical reasons: a singular intermediate or an
/// unmet hypothesis is reported as not applicable.
CheckResult evaluate_check(MatrixCheckId id, const MatrixInstance& inst,
                           double tol_rel = kDefaultTolerance);

/// Measures already-built chains.
CheckResult measure_chains(MatrixCheckId id, const std::vector<EvaluatedChain>& chains,
                           double tol_rel);

inline constexpr double kSpecialCaseTolerance = 1e-10;

/// Evaluates M_HIRZ at v = 1/2 next to M_GUMUS on the same pair and compares
/// their corresponding terms. The result carries M_HIRZ's singular-value
/// gaps; identity_residual is the largest normalized term mismatch.
CheckResult recover_special_case(const MatrixInstance& inst);

}  // namespace matmean
