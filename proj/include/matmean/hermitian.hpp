#pragma once

// Dense Hermitian and positive definite matrices with spectral calculus.
//
// All matrix-valued results that are Hermitian in exact arithmetic are
// replaced by (M + M*)/2 before being returned.

#include "matmean/jacobi.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace matmean {

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a scalar map is undefined on the spectrum, or a matrix
/// that must be positive definite is not.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

inline constexpr double kSymmetryTolerance = 1e-12;

template <typename Scalar_>
class Hermitian {
 public:
  using Scalar = Scalar_;
  using RealScalar = typename Eigen::NumTraits<Scalar>::Real;
  using MatrixType = DenseMatrix<Scalar>;
  using RealVector = Eigen::Matrix<RealScalar, Eigen::Dynamic, 1>;

  /// Validates conjugate symmetry to kSymmetryTolerance * max(1, max|a_ij|)
  /// and stores the symmetrized matrix.
  explicit Hermitian(const MatrixType& m) {
    if (m.rows() != m.cols() || m.rows() < 1) {
      std::ostringstream msg;
      msg << "Hermitian: expected a nonempty square matrix, got " << m.rows() << "x"
          << m.cols();
      throw DimensionMismatch(msg.str());
    }
    const RealScalar scale = std::max<RealScalar>(1, m.cwiseAbs().maxCoeff());
    const RealScalar asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (!(asym <= kSymmetryTolerance * scale)) {
      std::ostringstream msg;
      msg << "Hermitian: conjugate symmetry violated (max |a_ij - conj(a_ji)| = " << asym
          << ", allowed " << kSymmetryTolerance * scale << ")";
      throw DomainError(msg.str());
    }
    m_ = (m + m.adjoint()) / RealScalar(2);
  }

  /// Symmetrizes without validating; for results of Hermitian-preserving
  /// computations.
  static Hermitian symmetrize(const MatrixType& m) {
    Hermitian h;
    h.m_ = (m + m.adjoint()) / RealScalar(2);
    return h;
  }

  static Hermitian identity(Eigen::Index n) { return symmetrize(MatrixType::Identity(n, n)); }
  static Hermitian zero(Eigen::Index n) { return symmetrize(MatrixType::Zero(n, n)); }
  static Hermitian diagonal(const RealVector& d) {
    return symmetrize(d.template cast<Scalar>().asDiagonal());
  }

  Eigen::Index dim() const { return m_.rows(); }
  const MatrixType& matrix() const { return m_; }
  Scalar operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
  RealScalar max_abs() const { return m_.cwiseAbs().maxCoeff(); }

  friend Hermitian operator+(const Hermitian& a, const Hermitian& b) {
    check_same_dim(a, b, "operator+");
    return raw(a.m_ + b.m_);
  }
  friend Hermitian operator-(const Hermitian& a, const Hermitian& b) {
    check_same_dim(a, b, "operator-");
    return raw(a.m_ - b.m_);
  }
  friend Hermitian operator*(RealScalar s, const Hermitian& a) { return raw(s * a.m_); }
  friend Hermitian operator*(const Hermitian& a, RealScalar s) { return raw(s * a.m_); }
  friend Hermitian operator/(const Hermitian& a, RealScalar s) { return raw(a.m_ / s); }
  friend Hermitian operator-(const Hermitian& a) { return raw(-a.m_); }

  static void check_same_dim(const Hermitian& a, const Hermitian& b, const char* where) {
    if (a.dim() != b.dim()) {
      std::ostringstream msg;
      msg << where << ": dimension mismatch (" << a.dim() << " vs " << b.dim() << ")";
      throw DimensionMismatch(msg.str());
    }
  }

 protected:
  Hermitian() = default;

  // Sums, differences and real multiples of Hermitian matrices are exactly
  // Hermitian already.
  static Hermitian raw(MatrixType m) {
    Hermitian h;
    h.m_ = std::move(m);
    return h;
  }

  MatrixType m_;
};

template <typename Scalar_>
struct EigenDecomposition {
  using Scalar = Scalar_;
  using RealScalar = typename Eigen::NumTraits<Scalar>::Real;
  Eigen::Matrix<RealScalar, Eigen::Dynamic, 1> eigenvalues;  // ascending
  DenseMatrix<Scalar> eigenvectors;                            // columns

  Eigen::Index dim() const { return eigenvalues.size(); }
  RealScalar min() const { return eigenvalues(0); }
  RealScalar max() const { return eigenvalues(eigenvalues.size() - 1); }
};

template <typename Scalar>
EigenDecomposition<Scalar> eig_hermitian(const Hermitian<Scalar>& a,
                                         const JacobiOptions& options = {}) {
  auto r = jacobi_eigen<Scalar>(a.matrix(), options);
  return {std::move(r.eigenvalues), std::move(r.eigenvectors)};
}

/// Hermitian matrix with strictly positive spectrum. Carries its own
/// eigendecomposition, so functional calculus on it costs no solve.
template <typename Scalar_>
class PositiveDefinite : public Hermitian<Scalar_> {
 public:
  using Base = Hermitian<Scalar_>;
  using typename Base::MatrixType;
  using typename Base::RealScalar;
  using typename Base::RealVector;

  explicit PositiveDefinite(const Base& h) : Base(h), eig_(eig_hermitian(h)) { check(); }
  explicit PositiveDefinite(const MatrixType& m) : PositiveDefinite(Base(m)) {}

  /// Builds V diag(lambda) V* from a known decomposition (eigenvalues in any
  /// order; they are re-sorted ascending).
  static PositiveDefinite from_spectrum(const RealVector& lambda, const MatrixType& vectors) {
    PositiveDefinite out;
    const Eigen::Index n = lambda.size();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index i, Eigen::Index j) { return lambda(i) < lambda(j); });
    out.eig_.eigenvalues.resize(n);
    out.eig_.eigenvectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
      const auto src = order[static_cast<std::size_t>(k)];
      out.eig_.eigenvalues(k) = lambda(src);
      out.eig_.eigenvectors.col(k) = vectors.col(src);
    }
    const MatrixType m =
        vectors * lambda.template cast<Scalar_>().asDiagonal() * vectors.adjoint();
    out.m_ = (m + m.adjoint()) / RealScalar(2);
    out.check();
    return out;
  }

  static PositiveDefinite identity(Eigen::Index n) { return PositiveDefinite(Base::identity(n)); }
  static PositiveDefinite diagonal(const RealVector& d) { return PositiveDefinite(Base::diagonal(d)); }

  const EigenDecomposition<Scalar_>& eigen() const { return eig_; }
  RealScalar min_eigenvalue() const { return eig_.min(); }
  RealScalar max_eigenvalue() const { return eig_.max(); }

 private:
  PositiveDefinite() = default;

  void check() const {
    if (!(eig_.min() > 0)) {
      std::ostringstream msg;
      msg << "PositiveDefinite: smallest eigenvalue " << eig_.min() << " is not positive";
      throw DomainError(msg.str());
    }
  }

  EigenDecomposition<Scalar_> eig_;
};

using Complex = std::complex<double>;
using HermitianMatrix = Hermitian<Complex>;
using PositiveDefiniteMatrix = PositiveDefinite<Complex>;
using ComplexMatrix = DenseMatrix<Complex>;

namespace detail {

template <typename Scalar, typename F>
Eigen::Matrix<typename Eigen::NumTraits<Scalar>::Real, Eigen::Dynamic, 1> map_spectrum(
    const EigenDecomposition<Scalar>& e, F&& f) {
  Eigen::Matrix<typename Eigen::NumTraits<Scalar>::Real, Eigen::Dynamic, 1> out(e.dim());
  for (Eigen::Index i = 0; i < e.dim(); ++i) {
    const auto lambda = e.eigenvalues(i);
    const auto value = f(lambda);
    if (!std::isfinite(value)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "spectral_apply: map is undefined at eigenvalue " << lambda;
      throw DomainError(msg.str());
    }
    out(i) = value;
  }
  return out;
}

template <typename Scalar, typename RealVector>
DenseMatrix<Scalar> reassemble(const EigenDecomposition<Scalar>& e, const RealVector& values) {
  return e.eigenvectors * values.template cast<Scalar>().asDiagonal() *
         e.eigenvectors.adjoint();
}

}  // namespace detail

/// V f(Lambda) V* for a Hermitian matrix given its decomposition.
template <typename Scalar, typename F>
Hermitian<Scalar> spectral_apply(const EigenDecomposition<Scalar>& e, F&& f) {
  const auto values = detail::map_spectrum(e, f);
  return Hermitian<Scalar>::symmetrize(detail::reassemble(e, values));
}

template <typename Scalar, typename F>
Hermitian<Scalar> spectral_apply(const PositiveDefinite<Scalar>& a, F&& f) {
  return spectral_apply(a.eigen(), std::forward<F>(f));
}

template <typename Scalar, typename F>
Hermitian<Scalar> spectral_apply(const Hermitian<Scalar>& a, F&& f) {
  return spectral_apply(eig_hermitian(a), std::forward<F>(f));
}

/// A^p through the spectrum; power(A, -1) is the inverse, power(A, 0.5) the
/// principal square root.
template <typename Scalar>
PositiveDefinite<Scalar> power(const PositiveDefinite<Scalar>& a, double p) {
  const auto& e = a.eigen();
  const auto values = detail::map_spectrum(e, [p](double t) { return std::pow(t, p); });
  return PositiveDefinite<Scalar>::from_spectrum(values, e.eigenvectors);
}

template <typename Scalar>
PositiveDefinite<Scalar> inverse(const PositiveDefinite<Scalar>& a) {
  return power(a, -1.0);
}

/// Inverse of an invertible Hermitian (possibly indefinite) matrix.
template <typename Scalar>
Hermitian<Scalar> inverse(const Hermitian<Scalar>& a) {
  return spectral_apply(a, [](double t) { return 1.0 / t; });
}

/// X* A X, symmetrized.
template <typename Scalar>
Hermitian<Scalar> congruence(const DenseMatrix<Scalar>& x, const Hermitian<Scalar>& a) {
  if (x.rows() != a.dim() || x.cols() != a.dim()) {
    std::ostringstream msg;
    msg << "congruence: X is " << x.rows() << "x" << x.cols() << ", A is " << a.dim() << "x"
        << a.dim();
    throw DimensionMismatch(msg.str());
  }
  return Hermitian<Scalar>::symmetrize(x.adjoint() * a.matrix() * x);
}

template <typename Scalar>
Hermitian<Scalar> congruence(const Hermitian<Scalar>& x, const Hermitian<Scalar>& a) {
  return congruence(x.matrix(), a);
}

/// lambda_min(R - L): nonnegative exactly when L <= R in the Loewner order.
template <typename Scalar>
double loewner_margin(const Hermitian<Scalar>& lower, const Hermitian<Scalar>& upper) {
  Hermitian<Scalar>::check_same_dim(lower, upper, "loewner_margin");
  return eig_hermitian(upper - lower).min();
}

/// s_1 >= s_2 >= ... >= s_n >= 0.
class SingularValues {
 public:
  explicit SingularValues(Eigen::VectorXd values) : values_(std::move(values)) {
    for (Eigen::Index j = 0; j + 1 < values_.size(); ++j) {
      if (!(values_(j) >= values_(j + 1)) || values_(j + 1) < 0)
        throw std::invalid_argument("SingularValues: values must be nonnegative and descending");
    }
  }
  const Eigen::VectorXd& values() const { return values_; }
  Eigen::Index size() const { return values_.size(); }
  double operator[](Eigen::Index j) const { return values_(j); }
  double largest() const { return values_.size() ? values_(0) : 0.0; }

 private:
  Eigen::VectorXd values_;
};

template <typename Scalar>
SingularValues singular_values(const EigenDecomposition<Scalar>& e) {
  Eigen::VectorXd s = e.eigenvalues.cwiseAbs().template cast<double>();
  std::sort(s.data(), s.data() + s.size(), std::greater<>());
  return SingularValues(std::move(s));
}

/// Singular values of a Hermitian matrix: its |eigenvalues|, descending.
template <typename Scalar>
SingularValues singular_values(const Hermitian<Scalar>& x) {
  return singular_values(eig_hermitian(x));
}

/// ||X||_2 = max |lambda| for Hermitian X.
template <typename Scalar>
double spectral_norm(const Hermitian<Scalar>& x) {
  const auto e = eig_hermitian(x);
  return std::max(std::abs(e.min()), std::abs(e.max()));
}

}  // namespace matmean
