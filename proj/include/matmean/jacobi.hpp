#pragma once

// Cyclic Jacobi eigensolver for dense Hermitian (or real symmetric) matrices.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <type_traits>

namespace matmean {

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct JacobiOptions {
  int max_sweeps = 100;
  // Stop once the off-diagonal Frobenius mass drops below rel_tol * ||A||_F.
  double rel_tol = 1e-14;
};

template <typename Scalar>
struct JacobiResult {
  using RealScalar = typename Eigen::NumTraits<Scalar>::Real;
  Eigen::Matrix<RealScalar, Eigen::Dynamic, 1> eigenvalues;  // ascending
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> eigenvectors;
  int sweeps = 0;
};

namespace detail {

template <typename Scalar>
typename Eigen::NumTraits<Scalar>::Real off_diagonal_norm(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a) {
  typename Eigen::NumTraits<Scalar>::Real sum = 0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

// Unit-modulus phase of z (1 for z == 0); for real scalars this is the sign.
template <typename Scalar>
Scalar unit_phase(const Scalar& z) {
  const auto r = std::abs(z);
  if (r == 0) return Scalar(1);
  return z / r;
}

template <typename Scalar>
Scalar conj_of(const Scalar& z) {
  if constexpr (Eigen::NumTraits<Scalar>::IsComplex) return std::conj(z);
  else return z;
}

}  // namespace detail

/// Diagonalizes the Hermitian matrix `input` by cyclic Jacobi rotations.
///
/// Each rotation first strips the phase of the pivot a(p,q) so the 2x2
/// subproblem becomes real symmetric, then applies the classical rotation
/// that annihilates it. Only the lower/upper consistency of `input` is
/// assumed; the caller is responsible for checking conjugate symmetry.
/// Eigenvalues are returned ascending with matching eigenvector columns.
template <typename Scalar>
JacobiResult<Scalar> jacobi_eigen(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& input,
    const JacobiOptions& options = {}) {
  using RealScalar = typename Eigen::NumTraits<Scalar>::Real;
  using MatrixType = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  const Eigen::Index n = input.rows();
  MatrixType a = input;
  MatrixType v = MatrixType::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i) a(i, i) = Scalar(std::real(a(i, i)));

  const RealScalar frob = a.norm();
  const RealScalar target = static_cast<RealScalar>(options.rel_tol) * frob;

  JacobiResult<Scalar> out;
  int sweep = 0;
  while (detail::off_diagonal_norm(a) > target) {
    if (sweep == options.max_sweeps) {
      std::ostringstream msg;
      msg << "jacobi_eigen: no convergence after " << options.max_sweeps
          << " sweeps (n=" << n << ", ||A||_F=" << frob
          << ", off-diagonal=" << detail::off_diagonal_norm(a) << ")";
      throw ConvergenceError(msg.str());
    }
    ++sweep;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        const RealScalar mag = std::abs(apq);
        if (mag == 0) continue;

        const RealScalar app = std::real(a(p, p));
        const RealScalar aqq = std::real(a(q, q));
        const RealScalar theta = (aqq - app) / (2 * mag);
        RealScalar t;
        if (std::abs(theta) > RealScalar(1e150)) {
          t = 1 / (2 * theta);
        } else {
          t = (theta >= 0 ? RealScalar(1) : RealScalar(-1)) /
              (std::abs(theta) + std::sqrt(theta * theta + 1));
        }
        const RealScalar c = 1 / std::sqrt(t * t + 1);
        const RealScalar s = t * c;
        const Scalar phase_conj = detail::conj_of(detail::unit_phase(apq));

        // G = diag(1, conj(phase)) * [[c, s], [-s, c]] on rows/cols (p, q).
        const Scalar g_pp = c;
        const Scalar g_pq = s;
        const Scalar g_qp = -s * phase_conj;
        const Scalar g_qq = c * phase_conj;

        for (Eigen::Index k = 0; k < n; ++k) {  // A <- A G
          const Scalar akp = a(k, p);
          const Scalar akq = a(k, q);
          a(k, p) = akp * g_pp + akq * g_qp;
          a(k, q) = akp * g_pq + akq * g_qq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {  // A <- G* A
          const Scalar apk = a(p, k);
          const Scalar aqk = a(q, k);
          a(p, k) = detail::conj_of(g_pp) * apk + detail::conj_of(g_qp) * aqk;
          a(q, k) = detail::conj_of(g_pq) * apk + detail::conj_of(g_qq) * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {  // V <- V G
          const Scalar vkp = v(k, p);
          const Scalar vkq = v(k, q);
          v(k, p) = vkp * g_pp + vkq * g_qp;
          v(k, q) = vkp * g_pq + vkq * g_qq;
        }
        a(p, q) = Scalar(0);
        a(q, p) = Scalar(0);
        a(p, p) = Scalar(std::real(a(p, p)));
        a(q, q) = Scalar(std::real(a(q, q)));
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return std::real(a(i, i)) < std::real(a(j, j));
  });
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto src = order[static_cast<std::size_t>(k)];
    out.eigenvalues(k) = std::real(a(src, src));
    out.eigenvectors.col(k) = v.col(src);
  }
  out.sweeps = sweep;
  return out;
}

}  // namespace matmean
