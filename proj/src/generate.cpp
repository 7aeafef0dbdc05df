#include "matmean/generate.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace matmean {

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::None: return "NONE";
    case Relation::BLeqA: return "B_LEQ_A";
    case Relation::ALeqB: return "A_LEQ_B";
  }
  return "NONE";
}

std::optional<Relation> parse_relation(std::string_view s) {
  if (s == "NONE") return Relation::None;
  if (s == "B_LEQ_A") return Relation::BLeqA;
  if (s == "A_LEQ_B") return Relation::ALeqB;
  return std::nullopt;
}

MatrixInstance::MatrixInstance(PositiveDefiniteMatrix a_, PositiveDefiniteMatrix b_, Weight v_,
                               Relation declared_, std::uint64_t seed_)
    : a(std::move(a_)), b(std::move(b_)), v(v_), declared(declared_), seed(seed_) {
  HermitianMatrix::check_same_dim(a, b, "MatrixInstance");
  if (!(relation_margin() >= -kRelationTolerance)) {
    std::ostringstream msg;
    msg << "MatrixInstance: declared relation " << to_string(declared)
        << " does not hold (normalized margin " << relation_margin() << ")";
    throw std::invalid_argument(msg.str());
  }
}

double MatrixInstance::scale() const {
  return std::max({1.0, a.max_eigenvalue(), b.max_eigenvalue()});
}

double MatrixInstance::relation_margin() const {
  switch (declared) {
    case Relation::BLeqA: return loewner_margin<Complex>(b, a) / scale();
    case Relation::ALeqB: return loewner_margin<Complex>(a, b) / scale();
    case Relation::None: break;
  }
  return INFINITY;
}

MatrixInstance MatrixInstance::with_weight(Weight w) const {
  MatrixInstance copy = *this;
  copy.v = w;
  return copy;
}

namespace {

using Engine = std::mt19937_64;

ComplexMatrix haar_unitary(int n, Engine& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix z(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(i, j) = Complex(re, im);
    }
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < n; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

Eigen::VectorXd log_uniform(int n, SpectrumRange range, Engine& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::VectorXd out(n);
  const double llo = std::log(range.lo), lhi = std::log(range.hi);
  for (int i = 0; i < n; ++i) out(i) = range.lo == range.hi ? range.lo : std::exp(llo + (lhi - llo) * unit(rng));
  return out;
}

void validate(const GenSpec& spec) {
  if (spec.dim < 1) throw std::invalid_argument("GenSpec: dim must be >= 1");
  if (!(spec.spectrum.lo > 0) || !(spec.spectrum.lo <= spec.spectrum.hi) ||
      !std::isfinite(spec.spectrum.hi))
    throw std::invalid_argument("GenSpec: spectrum range must satisfy 0 < lo <= hi < inf");
  if (!(spec.gap_scale >= 0) || !std::isfinite(spec.gap_scale))
    throw std::invalid_argument("GenSpec: gap_scale must be finite and >= 0");
}

PositiveDefiniteMatrix pd_from(const ComplexMatrix& q, const Eigen::VectorXd& lambda) {
  return PositiveDefiniteMatrix::from_spectrum(lambda, q);
}

// PSD gap; rank deficient with probability 1/4 when dim >= 2.
HermitianMatrix random_gap(const GenSpec& spec, Engine& rng) {
  const int n = spec.dim;
  const ComplexMatrix q = haar_unitary(n, rng);
  Eigen::VectorXd mu = log_uniform(n, spec.spectrum, rng) * spec.gap_scale;
  std::uniform_int_distribution<int> quarter(0, 3);
  if (n >= 2 && quarter(rng) == 0) {
    std::uniform_int_distribution<int> rank(1, n - 1);
    const int r = rank(rng);
    for (int i = r; i < n; ++i) mu(i) = 0.0;
  }
  return HermitianMatrix::symmetrize(q * mu.cast<Complex>().asDiagonal() * q.adjoint());
}

}  // namespace

ComplexMatrix random_unitary(int dim, std::uint64_t seed) {
  Engine rng(seed);
  return haar_unitary(dim, rng);
}

PositiveDefiniteMatrix random_pd(const GenSpec& spec) {
  validate(spec);
  Engine rng(spec.seed);
  const ComplexMatrix q = haar_unitary(spec.dim, rng);
  return pd_from(q, log_uniform(spec.dim, spec.spectrum, rng));
}

MatrixInstance make_ordered_pair(const PositiveDefiniteMatrix& base, const HermitianMatrix& gap,
                                 Relation relation, Weight v, std::uint64_t seed) {
  const PositiveDefiniteMatrix shifted(base + gap);
  switch (relation) {
    case Relation::BLeqA: return MatrixInstance(shifted, base, v, relation, seed);
    case Relation::ALeqB: return MatrixInstance(base, shifted, v, relation, seed);
    case Relation::None: break;
  }
  throw std::invalid_argument("make_ordered_pair: relation must be B_LEQ_A or A_LEQ_B");
}

namespace {

MatrixInstance ordered_attempt(const GenSpec& spec, Weight v, std::uint64_t seed) {
  Engine rng(seed);
  const ComplexMatrix q = haar_unitary(spec.dim, rng);
  const auto base = pd_from(q, log_uniform(spec.dim, spec.spectrum, rng));
  const auto gap = random_gap(spec, rng);
  const Relation rel = spec.relation == GenRelation::BLeqA ? Relation::BLeqA : Relation::ALeqB;
  return make_ordered_pair(base, gap, rel, v, spec.seed);
}

}  // namespace

MatrixInstance random_ordered_pair(const GenSpec& spec, Weight v) {
  validate(spec);
  if (spec.relation == GenRelation::None)
    throw std::invalid_argument("random_ordered_pair: relation NONE has no order to generate");
  if (spec.relation == GenRelation::Commuting) {
    Engine rng(spec.seed);
    const ComplexMatrix q = haar_unitary(spec.dim, rng);
    auto a = pd_from(q, log_uniform(spec.dim, spec.spectrum, rng));
    auto b = pd_from(q, log_uniform(spec.dim, spec.spectrum, rng));
    return MatrixInstance(std::move(a), std::move(b), v, Relation::None, spec.seed);
  }

  constexpr int kMaxRetries = 5;
  std::uint64_t seed = spec.seed;
  for (int attempt = 0; attempt <= kMaxRetries; ++attempt) {
    try {
      auto inst = ordered_attempt(spec, v, seed);
      // Tighter than the instance invariant: before any tolerance.
      if (inst.relation_margin() >= -1e-12) return inst;
    } catch (const std::invalid_argument&) {
    } catch (const DomainError&) {
    }
    seed = splitmix64(seed ^ static_cast<std::uint64_t>(attempt + 1));
  }
  std::ostringstream msg;
  msg << "random_ordered_pair: could not satisfy the declared relation after " << kMaxRetries
      << " retries (seed " << spec.seed << ")";
  throw std::runtime_error(msg.str());
}

MatrixInstance random_instance(const GenSpec& spec, Weight v) {
  validate(spec);
  if (spec.relation != GenRelation::None) return random_ordered_pair(spec, v);
  Engine rng(spec.seed);
  const ComplexMatrix qa = haar_unitary(spec.dim, rng);
  auto a = pd_from(qa, log_uniform(spec.dim, spec.spectrum, rng));
  const ComplexMatrix qb = haar_unitary(spec.dim, rng);
  auto b = pd_from(qb, log_uniform(spec.dim, spec.spectrum, rng));
  return MatrixInstance(std::move(a), std::move(b), v, Relation::None, spec.seed);
}

MatrixInstance random_commuting_pair(const GenSpec& spec, Relation order, Weight v) {
  validate(spec);
  Engine rng(spec.seed);
  const ComplexMatrix q = haar_unitary(spec.dim, rng);
  Eigen::VectorXd base = log_uniform(spec.dim, spec.spectrum, rng);
  Eigen::VectorXd other = log_uniform(spec.dim, spec.spectrum, rng);
  if (order != Relation::None) {
    Eigen::VectorXd gap = log_uniform(spec.dim, spec.spectrum, rng) * spec.gap_scale;
    std::uniform_int_distribution<int> quarter(0, 3);
    for (int i = 0; i < spec.dim; ++i)
      if (quarter(rng) == 0) gap(i) = 0.0;
    other = base + gap;
  }
  auto p = pd_from(q, base);
  auto r = pd_from(q, other);
  if (order == Relation::BLeqA) return MatrixInstance(std::move(r), std::move(p), v, order, spec.seed);
  return MatrixInstance(std::move(p), std::move(r), v, order, spec.seed);
}

}  // namespace matmean
