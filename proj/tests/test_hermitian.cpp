#include "matmean/hermitian.hpp"
#include "test_util.hpp"

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include <cmath>

using namespace matmean;
using testutil::random_hermitian;
using testutil::random_psd;

TEST(JacobiTest, DiagonalizesTwoByTwo) {
  const HermitianMatrix a(ComplexMatrix{{2.0, 1.0}, {1.0, 2.0}});
  const auto e = eig_hermitian(a);
  EXPECT_NEAR(e.eigenvalues(0), 1.0, 1e-14);
  EXPECT_NEAR(e.eigenvalues(1), 3.0, 1e-14);
}

TEST(JacobiTest, ComplexOffDiagonal) {
  // [[1, i], [-i, 1]] has eigenvalues 0 and 2.
  const HermitianMatrix a(ComplexMatrix{{Complex(1, 0), Complex(0, 1)}, {Complex(0, -1), Complex(1, 0)}});
  const auto e = eig_hermitian(a);
  EXPECT_NEAR(e.eigenvalues(0), 0.0, 1e-14);
  EXPECT_NEAR(e.eigenvalues(1), 2.0, 1e-14);
}

TEST(JacobiTest, OneByOneAndZero) {
  const auto e = eig_hermitian(HermitianMatrix::diagonal(Eigen::VectorXd::Constant(1, -3.5)));
  EXPECT_EQ(e.eigenvalues(0), -3.5);
  const auto z = eig_hermitian(HermitianMatrix::zero(4));
  EXPECT_EQ(z.eigenvalues.cwiseAbs().maxCoeff(), 0.0);
}

TEST(JacobiTest, MatchesEigenSolverOnRandomMatrices) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 16;
    const auto a = random_hermitian(n, rng);
    const auto e = eig_hermitian(a);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> ref(a.matrix());
    ASSERT_EQ(ref.info(), Eigen::Success);
    const double scale = std::max(1.0, a.matrix().norm());
    for (int i = 0; i < n; ++i) EXPECT_NEAR(e.eigenvalues(i), ref.eigenvalues()(i), 1e-12 * scale);
  }
}

TEST(JacobiTest, ReconstructionAndOrthonormality) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 16;
    const auto a = random_hermitian(n, rng, 10.0);
    const auto e = eig_hermitian(a);
    const ComplexMatrix& u = e.eigenvectors;
    const double scale = std::max(1.0, a.matrix().norm());
    const ComplexMatrix rebuilt = u * e.eigenvalues.cast<Complex>().asDiagonal() * u.adjoint();
    EXPECT_LE((rebuilt - a.matrix()).norm(), 1e-10 * scale);
    EXPECT_LE((u.adjoint() * u - ComplexMatrix::Identity(n, n)).norm(), 1e-10);
    for (int i = 1; i < n; ++i) EXPECT_LE(e.eigenvalues(i - 1), e.eigenvalues(i));
  }
}

TEST(JacobiTest, RepeatedEigenvalues) {
  std::mt19937_64 rng(3);
  const ComplexMatrix q =
      Eigen::HouseholderQR<ComplexMatrix>(testutil::random_complex(5, 5, rng)).householderQ();
  Eigen::VectorXd lambda(5);
  lambda << 2, 2, 2, -1, -1;
  const auto a = HermitianMatrix::symmetrize(q * lambda.cast<Complex>().asDiagonal() * q.adjoint());
  const auto e = eig_hermitian(a);
  EXPECT_NEAR(e.eigenvalues(0), -1, 1e-13);
  EXPECT_NEAR(e.eigenvalues(4), 2, 1e-13);
}

TEST(JacobiTest, SweepCapRaises) {
  std::mt19937_64 rng(5);
  const auto a = random_hermitian(8, rng);
  EXPECT_THROW(jacobi_eigen<Complex>(a.matrix(), JacobiOptions{1, 1e-14}), ConvergenceError);
}

TEST(JacobiTest, RealScalarPath) {
  Eigen::MatrixXd m(3, 3);
  m << 4, 1, 0, 1, 3, 1, 0, 1, 2;
  const Hermitian<double> a(m);
  const auto e = eig_hermitian(a);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(m);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(e.eigenvalues(i), ref.eigenvalues()(i), 1e-13);
}

TEST(HermitianTest, RejectsNonHermitian) {
  ComplexMatrix m{{1.0, 2.0}, {0.0, 1.0}};
  EXPECT_THROW(HermitianMatrix{m}, DomainError);
  ComplexMatrix c{{Complex(1, 1), 0.0}, {0.0, 1.0}};
  EXPECT_THROW(HermitianMatrix{c}, DomainError);
  EXPECT_THROW(HermitianMatrix{ComplexMatrix(2, 3)}, std::invalid_argument);
}

TEST(HermitianTest, SymmetrizeIsHermitianPart) {
  ComplexMatrix m{{1.0, 2.0}, {0.0, 1.0}};
  const auto h = HermitianMatrix::symmetrize(m);
  EXPECT_EQ(h(0, 1), Complex(1.0, 0.0));
  EXPECT_EQ(h(1, 0), Complex(1.0, 0.0));
}

TEST(HermitianTest, DimensionMismatchThrows) {
  const auto a = HermitianMatrix::identity(2);
  const auto b = HermitianMatrix::identity(3);
  EXPECT_THROW(a + b, DimensionMismatch);
  EXPECT_THROW(loewner_margin(a, b), DimensionMismatch);
}

TEST(PositiveDefiniteTest, RejectsSemidefinite) {
  EXPECT_THROW(PositiveDefiniteMatrix::diagonal(Eigen::Vector2d(1.0, 0.0)), DomainError);
  EXPECT_THROW(PositiveDefiniteMatrix::diagonal(Eigen::Vector2d(1.0, -1e-3)), DomainError);
  EXPECT_NO_THROW(PositiveDefiniteMatrix::diagonal(Eigen::Vector2d(1.0, 1e-300)));
}

TEST(SpectralTest, PowerAndInverse) {
  std::mt19937_64 rng(7);
  for (int n = 1; n <= 8; ++n) {
    const PositiveDefiniteMatrix a(random_psd(n, rng, 0.5));
    const auto root = power(a, 0.5);
    EXPECT_LE((root.matrix() * root.matrix() - a.matrix()).norm(), 1e-12 * a.matrix().norm());
    const auto inv = inverse(a);
    EXPECT_LE((inv.matrix() * a.matrix() - ComplexMatrix::Identity(n, n)).norm(), 1e-10);
    const auto p0 = power(a, 0.0);
    EXPECT_LE((p0.matrix() - ComplexMatrix::Identity(n, n)).norm(), 1e-12);
  }
}

TEST(SpectralTest, InfiniteValueNamesEigenvalue) {
  const auto a = HermitianMatrix::diagonal(Eigen::Vector2d(0.0, 1.0));
  try {
    spectral_apply(a, [](double x) { return 1.0 / x; });
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("eigenvalue"), std::string::npos);
  }
}

TEST(LoewnerTest, MarginSignsAndDiagonalExample) {
  const auto i = HermitianMatrix::identity(3);
  EXPECT_NEAR(loewner_margin(i, 2.0 * i), 1.0, 1e-15);
  EXPECT_NEAR(loewner_margin(2.0 * i, i), -1.0, 1e-15);
  const auto l = HermitianMatrix::diagonal(Eigen::Vector2d(1, 3));
  const auto r = HermitianMatrix::diagonal(Eigen::Vector2d(2, 2));
  EXPECT_NEAR(loewner_margin(l, r), -1.0, 1e-15);
}

TEST(SingularValuesTest, AbsoluteEigenvaluesDescending) {
  const auto x = HermitianMatrix::diagonal(Eigen::Vector3d(-5, 1, 3));
  const auto s = singular_values(x);
  ASSERT_EQ(s.size(), 3);
  EXPECT_EQ(s[0], 5);
  EXPECT_EQ(s[1], 3);
  EXPECT_EQ(s[2], 1);
  EXPECT_EQ(spectral_norm(x), 5);
}

TEST(SingularValuesTest, MatchesEigenJacobiSvd) {
  std::mt19937_64 rng(21);
  for (int n = 1; n <= 12; ++n) {
    const auto x = random_hermitian(n, rng);
    const auto s = singular_values(x);
    Eigen::JacobiSVD<ComplexMatrix> svd(x.matrix());
    for (int j = 0; j < n; ++j) EXPECT_NEAR(s[j], svd.singularValues()(j), 1e-12 * (1 + s[0]));
  }
}

TEST(WeylTest, MonotonicityUnderPsdIncrement) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 10;
    const auto x = random_psd(n, rng);
    const auto y = x + random_psd(n, rng);
    const auto sx = singular_values(x);
    const auto sy = singular_values(y);
    const double scale = std::max(1.0, sy[0]);
    for (int j = 0; j < n; ++j) EXPECT_GE(sy[j] - sx[j], -1e-12 * scale);
    // Eigenvalues of an indefinite H also increase under H -> H + P.
    const auto h = random_hermitian(n, rng);
    const auto p = random_psd(n, rng);
    const auto eh = eig_hermitian(h);
    const auto ehp = eig_hermitian(h + p);
    for (int j = 0; j < n; ++j) EXPECT_GE(ehp.eigenvalues(j) - eh.eigenvalues(j), -1e-12 * scale * 10);
  }
}

TEST(WeylTest, ProductSingularValuesAgree) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 10;
    const ComplexMatrix x = testutil::random_complex(n, n, rng);
    const auto s1 = singular_values(HermitianMatrix::symmetrize(x.adjoint() * x));
    const auto s2 = singular_values(HermitianMatrix::symmetrize(x * x.adjoint()));
    for (int j = 0; j < n; ++j) EXPECT_NEAR(s1[j], s2[j], 1e-12 * std::max(1.0, s1[0]));
  }
}

TEST(CongruenceTest, PreservesPositivity) {
  std::mt19937_64 rng(51);
  for (int n = 1; n <= 8; ++n) {
    const auto a = random_psd(n, rng, 0.1);
    const ComplexMatrix x = testutil::random_complex(n, n, rng);
    const auto c = congruence<Complex>(x, a);
    EXPECT_GE(eig_hermitian(c).min(), -1e-12 * spectral_norm(c));
  }
}
