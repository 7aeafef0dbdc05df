#include "matmean/catalog.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace matmean {

namespace {

const Interval kAnyV{0.0, 1.0};

const std::vector<CheckInfo>& table() {
  using R = Relation;
  using S = ScalarLemmaId;
  static const std::vector<CheckInfo> checks = {
      {MatrixCheckId::Chain, "M_CHAIN", "harmonic-geometric-arithmetic chain",
       "any A, B; 0 <= v <= 1: A!_vB <= A#_vB <= A∇_vB", true, {{R::None, kAnyV}}, false, std::nullopt},
      {MatrixCheckId::Between, "M_BETWEEN", "means between ordered endpoints",
       "A <= B; 0 <= v <= 1: A <= A!_vB, A#_vB, A∇_vB <= B", true, {{R::ALeqB, kAnyV}}, false, std::nullopt},
      {MatrixCheckId::Gumus, "M_GUMUS", "AM-GM gap, singular values",
       "B <= A; v = 1/2: (1/8)s_j(A^-1/2(A-B)^2A^-1/2) <= s_j(A∇B-A#B) <= "
       "(1/8)s_j(B^-1/2(A-B)^2B^-1/2)",
       false, {{R::BLeqA, kAnyV}}, false, S::AmGm},
      {MatrixCheckId::Hirz, "M_HIRZ", "weighted AM-GM gap, singular values",
       "B <= A; 0 <= v <= 1: v(1-v)/2 s_j(A^-1/2(A-B)^2A^-1/2) <= s_j(A∇_vB-A#_vB) <= "
       "v(1-v)/2 s_j(B^-1/2(A-B)^2B^-1/2)",
       true, {{R::BLeqA, kAnyV}}, false, S::LemmaV},
      {MatrixCheckId::Thm1, "M_THM1", "AM-GM gap, Loewner bounds by the means",
       "any A, B; v = 1/2: (1/8)(A-B)(A∇B)^-1(A-B) <= A∇B-A#B <= (1/8)(A-B)(A#B)^-1(A-B)",
       false, {{R::None, kAnyV}}, false, S::SqrtIdentity},
      {MatrixCheckId::Identity1, "M_ID1", "AM-GM gap identity",
       "any A, B; v = 1/2: A∇B-A#B = (1/8)(A-B)((A∇B+A#B)/2)^-1(A-B)", false,
       {{R::None, kAnyV}}, false, S::SqrtIdentity},
      {MatrixCheckId::SjAg, "M_SJ_AG", "AM-GM gap, singular values by the means",
       "any A, B; v = 1/2: (1/8)s_j((A∇B)^-1/2(A-B)^2(A∇B)^-1/2) <= s_j(A∇B-A#B) <= "
       "(1/8)s_j((A#B)^-1/2(A-B)^2(A#B)^-1/2)",
       false, {{R::None, kAnyV}}, false, S::SqrtIdentity},
      {MatrixCheckId::RefineAg, "M_REFINE_AG", "refined AM-GM singular value chains",
       "B <= A; v = 1/2: s_j(A∇B-A#B) <= (1/8)s_j((A#B)^-1/2(A-B)^2(A#B)^-1/2) <= "
       "(1/8)s_j(B^-1/2(A-B)^2B^-1/2) and (1/8)s_j(A^-1/2(A-B)^2A^-1/2) <= "
       "(1/8)s_j((A∇B)^-1/2(A-B)^2(A∇B)^-1/2) <= s_j(A∇B-A#B)",
       false, {{R::BLeqA, kAnyV}}, false, S::AmGm},
      {MatrixCheckId::Sandwich, "M_SANDWICH", "AM-GM gap inverse sandwich",
       "any A, B with A-B invertible; v = 1/2: A#B <= (1/8)(A-B)(A∇B-A#B)^-1(A-B) <= A∇B",
       false, {{R::None, kAnyV}}, true, S::SqrtIdentity},
      {MatrixCheckId::Thm12, "M_THM12", "weighted AM-GM gap, A <= B",
       "A <= B; 0 <= v <= 1: v(1-v)/2 (B-A)B^-1(B-A) <= A∇_vB-A#_vB <= "
       "v(1-v)/2 (B-A)A^-1(A!B)A^-1(B-A)",
       true, {{R::ALeqB, kAnyV}}, false, S::LemmaV},
      {MatrixCheckId::Thm13, "M_THM13", "weighted AM-GM gap, B <= A",
       "B <= A; 0 <= v <= 1: v(1-v)/2 (A-B)A^-1(A!B)A^-1(A-B) <= A∇_vB-A#_vB <= "
       "v(1-v)/2 (A-B)B^-1(A-B)",
       true, {{R::BLeqA, kAnyV}}, false, S::LemmaVi},
      {MatrixCheckId::SjV, "M_SJ_V", "weighted AM-GM gap, singular values, B <= A",
       "B <= A; 0 <= v <= 1: v(1-v)/2 s_j(A^-1/2(A-B)^2A^-1/2) <= s_j(A∇_vB-A#_vB) <= "
       "v(1-v)/2 s_j(B^-1/2(A-B)^2B^-1/2)",
       true, {{R::BLeqA, kAnyV}}, false, S::LemmaV},
      {MatrixCheckId::Cor25, "M_COR25", "weighted AM-GM gap, lower bound by A∇B",
       "(i) A <= B, 1/2 <= v <= 1 or (ii) B <= A, 0 <= v <= 1/2: A∇_vB-A#_vB >= "
       "v(1-v)/2 (B-A)(A∇B)^-1(B-A)",
       true, {{R::ALeqB, {0.5, 1.0}}, {R::BLeqA, {0.0, 0.5}}}, false, S::LemmaV2},
      {MatrixCheckId::SjCor25, "M_SJ_COR25",
       "weighted AM-GM gap, singular value lower bounds",
       "(i) A <= B, 1/2 <= v <= 1 or (ii) B <= A, 0 <= v <= 1/2: s_j(A∇_vB-A#_vB) >= "
       "v(1-v)/2 s_j((A-B)(A∇B)^-1(A-B)) >= v(1-v)/2 s_j(A^-1/2(A-B)^2A^-1/2)",
       true, {{R::ALeqB, {0.5, 1.0}}, {R::BLeqA, {0.0, 0.5}}}, false, S::LemmaV2},
      {MatrixCheckId::Gh, "M_GH", "GM-HM gap upper bound",
       "any A, B; v = 1/2: A#B-A!B <= (1/8)(A-B)(A#B)^-1(A-B)", false, {{R::None, kAnyV}},
       false, S::GeometricHarmonic},
      {MatrixCheckId::GhSj, "M_GH_SJ", "GM-HM gap, singular values",
       "B <= A; v = 1/2: s_j(A#B-A!B) <= (1/8)s_j((A-B)(A#B)^-1(A-B)) <= "
       "(1/8)s_j(B^-1/2(A-B)^2B^-1/2)",
       false, {{R::BLeqA, kAnyV}}, false, S::GeometricHarmonic},
      {MatrixCheckId::GhV, "M_GH_V", "weighted GM-HM gap upper bound",
       "A <= B; 0 <= v <= 1: A#_vB-A!_vB <= v(1-v)/2 (A-B)(A#_vB)^-1(A-B)", true,
       {{R::ALeqB, kAnyV}}, false, S::GeometricHarmonicWeighted},
      {MatrixCheckId::GhVSj, "M_GH_V_SJ", "weighted GM-HM gap, singular values",
       "A <= B; 0 <= v <= 1: s_j(A#_vB-A!_vB) <= v(1-v)/2 s_j((A-B)(A#_vB)^-1(A-B)) <= "
       "v(1-v)/2 s_j(A^-1/2(A-B)^2A^-1/2)",
       true, {{R::ALeqB, kAnyV}}, false, S::GeometricHarmonicWeighted},
      {MatrixCheckId::Ah, "M_AH", "AM-HM gap identity and bounds",
       "A <= B; v = 1/2: A∇B-A!B = (1/4)(A-B)(A∇B)^-1(A-B); (1/4)(A-B)B^-1(A-B) <= A∇B-A!B <= "
       "(1/4)(A-B)A^-1(A-B); (1/4)s_j(B^-1/2(A-B)^2B^-1/2) <= s_j(A∇B-A!B) <= "
       "(1/4)s_j(A^-1/2(A-B)^2A^-1/2)",
       false, {{R::ALeqB, kAnyV}}, false, S::ArithmeticHarmonicIdentity},
  };
  return checks;
}

struct NotApplicable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using PD = PositiveDefiniteMatrix;
using H = HermitianMatrix;

// Lazily computed subexpressions shared by the terms of one instance.
class Workspace {
 public:
  explicit Workspace(const MatrixInstance& inst) : inst_(inst), diff_(inst.a - inst.b) {}

  const PD& a() const { return inst_.a; }
  const PD& b() const { return inst_.b; }
  Weight v() const { return inst_.v; }
  double c() const { return inst_.v.bound_coefficient(); }
  const H& diff() const { return diff_; }

  const PD& arith() { return lazy(arith_, [&] { return arithmetic_mean(a(), b(), Weight::half()); }); }
  const PD& geo() { return lazy(geo_, [&] { return geometric_mean(a(), b(), Weight::half()); }); }
  const PD& harm() { return lazy(harm_, [&] { return harmonic_mean(a(), b(), Weight::half()); }); }
  const PD& arith_v() { return lazy(arith_v_, [&] { return arithmetic_mean(a(), b(), v()); }); }
  const PD& geo_v() { return lazy(geo_v_, [&] { return geometric_mean(a(), b(), v()); }); }
  const PD& harm_v() { return lazy(harm_v_, [&] { return harmonic_mean(a(), b(), v()); }); }

  const H& ag_gap() { return lazy(ag_gap_, [&] { return H(arith() - geo()); }); }
  const H& ag_gap_v() { return lazy(ag_gap_v_, [&] { return H(arith_v() - geo_v()); }); }

  const H& diff_squared() {
    return lazy(diff_sq_, [&] { return H::symmetrize(diff_.matrix() * diff_.matrix()); });
  }

  // (A-B) P^-1 (A-B)
  H quadratic(const PD& p) { return congruence<Complex>(diff_, inverse(p)); }
  // P^-1/2 (A-B)^2 P^-1/2
  H weighted_square(const PD& p) { return congruence<Complex>(power(p, -0.5), diff_squared()); }

 private:
  template <typename T, typename F>
  static const T& lazy(std::optional<T>& slot, F&& make) {
    if (!slot) slot.emplace(make());
    return *slot;
  }

  const MatrixInstance& inst_;
  H diff_;
  std::optional<PD> arith_, geo_, harm_, arith_v_, geo_v_, harm_v_;
  std::optional<H> ag_gap_, ag_gap_v_, diff_sq_;
};

EvaluatedChain chain(ChainKind kind, std::vector<std::pair<std::string, H>> items) {
  EvaluatedChain out{kind, {}, {}};
  for (auto& [label, term] : items) {
    out.labels.push_back(std::move(label));
    out.terms.push_back(std::move(term));
  }
  return out;
}

void require_invertible_difference(const H& diff, double tol_rel) {
  const auto e = eig_hermitian(diff);
  const double largest = std::max(std::abs(e.min()), std::abs(e.max()));
  double smallest = INFINITY;
  for (Eigen::Index i = 0; i < e.dim(); ++i) smallest = std::min(smallest, std::abs(e.eigenvalues(i)));
  // Roundoff in (A∇B - A#B)^-1 grows like cond(A-B)^2.
  const double limit = std::sqrt(tol_rel / DBL_EPSILON);
  if (!(smallest > 0) || largest / smallest > limit) {
    std::ostringstream msg;
    msg << "A-B numerically singular (condition number "
        << (smallest > 0 ? largest / smallest : INFINITY) << " > " << limit << ")";
    throw NotApplicable(msg.str());
  }
}

std::vector<EvaluatedChain> build(MatrixCheckId id, Workspace& w, double tol_rel) {
  using K = ChainKind;
  const double c = w.c();
  switch (id) {
    case MatrixCheckId::Chain:
      return {chain(K::Loewner, {{"A!_vB", w.harm_v()}, {"A#_vB", w.geo_v()}, {"A∇_vB", w.arith_v()}})};

    case MatrixCheckId::Between:
      return {chain(K::Loewner, {{"A", w.a()}, {"A!_vB", w.harm_v()}, {"B", w.b()}}),
              chain(K::Loewner, {{"A", w.a()}, {"A#_vB", w.geo_v()}, {"B", w.b()}}),
              chain(K::Loewner, {{"A", w.a()}, {"A∇_vB", w.arith_v()}, {"B", w.b()}})};

    case MatrixCheckId::Gumus:
      return {chain(K::Singular, {{"(1/8)A^-1/2(A-B)^2A^-1/2", w.weighted_square(w.a()) / 8.0},
                                  {"A∇B-A#B", w.ag_gap()},
                                  {"(1/8)B^-1/2(A-B)^2B^-1/2", w.weighted_square(w.b()) / 8.0}})};

    case MatrixCheckId::Hirz:
    case MatrixCheckId::SjV:
      return {chain(K::Singular, {{"v(1-v)/2 A^-1/2(A-B)^2A^-1/2", c * w.weighted_square(w.a())},
                                  {"A∇_vB-A#_vB", w.ag_gap_v()},
                                  {"v(1-v)/2 B^-1/2(A-B)^2B^-1/2", c * w.weighted_square(w.b())}})};

    case MatrixCheckId::Thm1:
      return {chain(K::Loewner, {{"(1/8)(A-B)(A∇B)^-1(A-B)", w.quadratic(w.arith()) / 8.0},
                                 {"A∇B-A#B", w.ag_gap()},
                                 {"(1/8)(A-B)(A#B)^-1(A-B)", w.quadratic(w.geo()) / 8.0}})};

    case MatrixCheckId::Identity1:
      return {chain(K::Identity, {{"A∇B-A#B", w.ag_gap()},
                                  {"(1/8)(A-B)((A∇B+A#B)/2)^-1(A-B)", ag_gap_identity_rhs(w.a(), w.b())}})};

    case MatrixCheckId::SjAg:
      return {chain(K::Singular, {{"A∇B-A#B", w.ag_gap()},
                                  {"(1/8)(A#B)^-1/2(A-B)^2(A#B)^-1/2", w.weighted_square(w.geo()) / 8.0}}),
              chain(K::Singular, {{"(1/8)(A∇B)^-1/2(A-B)^2(A∇B)^-1/2", w.weighted_square(w.arith()) / 8.0},
                                  {"A∇B-A#B", w.ag_gap()}})};

    case MatrixCheckId::RefineAg:
      return {chain(K::Singular, {{"A∇B-A#B", w.ag_gap()},
                                  {"(1/8)(A#B)^-1/2(A-B)^2(A#B)^-1/2", w.weighted_square(w.geo()) / 8.0},
                                  {"(1/8)B^-1/2(A-B)^2B^-1/2", w.weighted_square(w.b()) / 8.0}}),
              chain(K::Singular, {{"(1/8)A^-1/2(A-B)^2A^-1/2", w.weighted_square(w.a()) / 8.0},
                                  {"(1/8)(A∇B)^-1/2(A-B)^2(A∇B)^-1/2", w.weighted_square(w.arith()) / 8.0},
                                  {"A∇B-A#B", w.ag_gap()}})};

    case MatrixCheckId::Sandwich: {
      require_invertible_difference(w.diff(), tol_rel);
      const H middle = congruence<Complex>(w.diff(), inverse(w.ag_gap())) / 8.0;
      return {chain(K::Loewner, {{"A#B", w.geo()},
                                 {"(1/8)(A-B)(A∇B-A#B)^-1(A-B)", middle},
                                 {"A∇B", w.arith()}})};
    }

    case MatrixCheckId::Thm12: {
      const PD a_inv = inverse(w.a());
      const H upper = c * congruence<Complex>(ComplexMatrix(a_inv.matrix() * (-w.diff()).matrix()), w.harm());
      return {chain(K::Loewner, {{"v(1-v)/2 (B-A)B^-1(B-A)", c * w.quadratic(w.b())},
                                 {"A∇_vB-A#_vB", w.ag_gap_v()},
                                 {"v(1-v)/2 (B-A)A^-1(A!B)A^-1(B-A)", upper}})};
    }

    case MatrixCheckId::Thm13: {
      const PD a_inv = inverse(w.a());
      const H lower = c * congruence<Complex>(ComplexMatrix(a_inv.matrix() * w.diff().matrix()), w.harm());
      return {chain(K::Loewner, {{"v(1-v)/2 (A-B)A^-1(A!B)A^-1(A-B)", lower},
                                 {"A∇_vB-A#_vB", w.ag_gap_v()},
                                 {"v(1-v)/2 (A-B)B^-1(A-B)", c * w.quadratic(w.b())}})};
    }

    case MatrixCheckId::Cor25:
      return {chain(K::Loewner, {{"v(1-v)/2 (B-A)(A∇B)^-1(B-A)", c * w.quadratic(w.arith())},
                                 {"A∇_vB-A#_vB", w.ag_gap_v()}})};

    case MatrixCheckId::SjCor25:
      return {chain(K::Singular, {{"v(1-v)/2 A^-1/2(A-B)^2A^-1/2", c * w.weighted_square(w.a())},
                                  {"v(1-v)/2 (A-B)(A∇B)^-1(A-B)", c * w.quadratic(w.arith())},
                                  {"A∇_vB-A#_vB", w.ag_gap_v()}})};

    case MatrixCheckId::Gh:
      return {chain(K::Loewner, {{"A#B-A!B", H(w.geo() - w.harm())},
                                 {"(1/8)(A-B)(A#B)^-1(A-B)", w.quadratic(w.geo()) / 8.0}})};

    case MatrixCheckId::GhSj:
      return {chain(K::Singular, {{"A#B-A!B", H(w.geo() - w.harm())},
                                  {"(1/8)(A-B)(A#B)^-1(A-B)", w.quadratic(w.geo()) / 8.0},
                                  {"(1/8)B^-1/2(A-B)^2B^-1/2", w.weighted_square(w.b()) / 8.0}})};

    case MatrixCheckId::GhV:
      return {chain(K::Loewner, {{"A#_vB-A!_vB", H(w.geo_v() - w.harm_v())},
                                 {"v(1-v)/2 (A-B)(A#_vB)^-1(A-B)", c * w.quadratic(w.geo_v())}})};

    case MatrixCheckId::GhVSj:
      return {chain(K::Singular, {{"A#_vB-A!_vB", H(w.geo_v() - w.harm_v())},
                                  {"v(1-v)/2 (A-B)(A#_vB)^-1(A-B)", c * w.quadratic(w.geo_v())},
                                  {"v(1-v)/2 A^-1/2(A-B)^2A^-1/2", c * w.weighted_square(w.a())}})};

    case MatrixCheckId::Ah: {
      const H gap = w.arith() - w.harm();
      return {chain(K::Identity, {{"A∇B-A!B", gap}, {"(1/4)(A-B)(A∇B)^-1(A-B)", ah_gap_identity_rhs(w.a(), w.b())}}),
              chain(K::Loewner, {{"(1/4)(A-B)B^-1(A-B)", w.quadratic(w.b()) / 4.0},
                                 {"A∇B-A!B", gap},
                                 {"(1/4)(A-B)A^-1(A-B)", w.quadratic(w.a()) / 4.0}}),
              chain(K::Singular, {{"(1/4)B^-1/2(A-B)^2B^-1/2", w.weighted_square(w.b()) / 4.0},
                                  {"A∇B-A!B", gap},
                                  {"(1/4)A^-1/2(A-B)^2A^-1/2", w.weighted_square(w.a()) / 4.0}})};
    }
  }
  throw std::invalid_argument("evaluate_chains: unknown check");
}

}  // namespace

std::span<const CheckInfo> list_checks() { return table(); }

const CheckInfo& check_info(MatrixCheckId id) { return table().at(static_cast<std::size_t>(id)); }

std::optional<MatrixCheckId> parse_check(std::string_view name) {
  for (const auto& c : table())
    if (c.name == name) return c.id;
  return std::nullopt;
}

int check_ordinal(MatrixCheckId id) { return static_cast<int>(id); }

double SingularGap::min_normalized() const {
  double m = INFINITY;
  for (double g : values) m = std::min(m, g / scale);
  return m;
}

double CheckResult::min_margin() const {
  double m = INFINITY;
  for (const auto& x : loewner_margins) m = std::min(m, x.normalized());
  return m;
}

double CheckResult::min_sv_gap() const {
  double m = INFINITY;
  for (const auto& g : sv_gaps) m = std::min(m, g.min_normalized());
  return m;
}

double CheckResult::max_residual() const { return identity_residual.value_or(-INFINITY); }

double CheckResult::score() const {
  double s = std::min(min_margin(), min_sv_gap());
  if (identity_residual) s = std::min(s, -*identity_residual);
  return s;
}

bool hypothesis_holds(MatrixCheckId id, const MatrixInstance& inst) {
  const auto& info = check_info(id);
  for (const auto& c : info.cases) {
    const bool relation_ok = c.relation == Relation::None || c.relation == inst.declared;
    const bool v_ok = !info.weighted || c.v.contains(inst.v.value());
    if (relation_ok && v_ok) return true;
  }
  return false;
}

std::vector<EvaluatedChain> evaluate_chains(MatrixCheckId id, const MatrixInstance& inst) {
  if (!hypothesis_holds(id, inst)) throw std::invalid_argument("evaluate_chains: hypothesis unmet");
  Workspace w(inst);
  return build(id, w, kDefaultTolerance);
}

CheckResult measure_chains(MatrixCheckId id, const std::vector<EvaluatedChain>& chains,
                           double tol_rel) {
  CheckResult r;
  r.id = id;
  r.applicable = true;
  r.tolerance_used = tol_rel;
  for (const auto& ch : chains) {
    std::vector<EigenDecomposition<Complex>> eig;
    eig.reserve(ch.terms.size());
    for (const auto& t : ch.terms) eig.push_back(eig_hermitian(t));
    auto norm = [&](std::size_t k) {
      return std::max(std::abs(eig[k].min()), std::abs(eig[k].max()));
    };
    for (std::size_t k = 0; k + 1 < ch.terms.size(); ++k) {
      const double scale = std::max({1.0, norm(k), norm(k + 1)});
      switch (ch.kind) {
        case ChainKind::Loewner:
          r.loewner_margins.push_back({loewner_margin(ch.terms[k], ch.terms[k + 1]), scale});
          break;
        case ChainKind::Singular: {
          const auto lo = singular_values(eig[k]);
          const auto hi = singular_values(eig[k + 1]);
          SingularGap g;
          g.scale = scale;
          for (Eigen::Index j = 0; j < lo.size(); ++j) g.values.push_back(hi[j] - lo[j]);
          r.sv_gaps.push_back(std::move(g));
          break;
        }
        case ChainKind::Identity: {
          const double res = spectral_norm(H(ch.terms[k] - ch.terms[k + 1])) / scale;
          r.identity_residual = std::max(r.identity_residual.value_or(0.0), res);
          break;
        }
      }
    }
  }
  r.passed = r.min_margin() >= -tol_rel && r.min_sv_gap() >= -tol_rel &&
             r.max_residual() <= tol_rel;
  return r;
}

CheckResult evaluate_check(MatrixCheckId id, const MatrixInstance& inst, double tol_rel) {
  CheckResult r;
  r.id = id;
  r.tolerance_used = tol_rel;
  if (!(tol_rel > 0)) throw std::invalid_argument("evaluate_check: tol_rel must be > 0");
  if (!hypothesis_holds(id, inst)) {
    std::ostringstream msg;
    msg << "hypothesis unmet (relation " << to_string(inst.declared) << ", v = " << inst.v.value()
        << "; requires " << check_info(id).hypothesis.substr(0, check_info(id).hypothesis.find(':'))
        << ")";
    r.reason = msg.str();
    return r;
  }
  try {
    Workspace w(inst);
    const auto chains = build(id, w, tol_rel);
    r = measure_chains(id, chains, tol_rel);
    r.low_signal = spectral_norm(w.diff()) < kLowSignalRatio * inst.a.max_eigenvalue();
  } catch (const NotApplicable& e) {
    r.reason = e.what();
  } catch (const DomainError& e) {
    r.reason = std::string("singular or indefinite intermediate: ") + e.what();
  } catch (const ConvergenceError& e) {
    r.reason = e.what();
  }
  return r;
}

CheckResult recover_special_case(const MatrixInstance& inst) {
  if (inst.declared != Relation::BLeqA)
    throw std::invalid_argument("recover_special_case: requires a B_LEQ_A instance");
  const auto half = inst.with_weight(Weight::half());
  const auto hirz = evaluate_chains(MatrixCheckId::Hirz, half);
  const auto gumus = evaluate_chains(MatrixCheckId::Gumus, half);

  CheckResult r = measure_chains(MatrixCheckId::Hirz, hirz, kSpecialCaseTolerance);
  double worst = 0.0;
  for (std::size_t k = 0; k < hirz[0].terms.size(); ++k) {
    const auto& p = hirz[0].terms[k];
    const auto& q = gumus[0].terms[k];
    const double scale = std::max({1.0, spectral_norm(p), spectral_norm(q)});
    worst = std::max(worst, spectral_norm(H(p - q)) / scale);
  }
  r.identity_residual = worst;
  r.low_signal = spectral_norm(H(inst.a - inst.b)) < kLowSignalRatio * inst.a.max_eigenvalue();
  r.passed = r.passed && worst <= kSpecialCaseTolerance;
  return r;
}

}  // namespace matmean
