#include "matmean/generate.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace matmean;

namespace {

GenSpec spec_for(int dim, GenRelation rel, std::uint64_t seed) {
  GenSpec s;
  s.dim = dim;
  s.relation = rel;
  s.seed = seed;
  return s;
}

bool same_bits(const MatrixInstance& x, const MatrixInstance& y) {
  return x.a.matrix() == y.a.matrix() && x.b.matrix() == y.b.matrix();
}

}  // namespace

TEST(SeedTest, SplitmixReferenceValues) {
  // First outputs of the reference splitmix64 generator seeded with 0.
  std::uint64_t state = 0;
  auto next = [&] {
    const auto out = splitmix64(state);
    state += 0x9E3779B97F4A7C15ULL;
    return out;
  };
  EXPECT_EQ(next(), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(next(), 0x6E789E6AA1B965F4ULL);
  EXPECT_EQ(next(), 0x06C45D188009454FULL);
}

TEST(SeedTest, DerivedSeedsDistinct) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t ordinal = 0; ordinal < 19; ++ordinal)
    for (std::uint64_t t = 0; t < 500; ++t) seen.insert(derive_seed(42, ordinal, t));
  EXPECT_EQ(seen.size(), 19u * 500u);
  EXPECT_NE(derive_seed(42, 0, 0), derive_seed(43, 0, 0));
  static_assert(derive_seed(1, 2, 3) == derive_seed(1, 2, 3));
}

TEST(GenerateTest, RandomPdSpectrumWithinRange) {
  for (int n = 1; n <= 8; ++n) {
    const auto a = random_pd(spec_for(n, GenRelation::None, 10 + n));
    EXPECT_GE(a.min_eigenvalue(), 1e-2 * (1 - 1e-10));
    EXPECT_LE(a.max_eigenvalue(), 1e2 * (1 + 1e-10));
  }
}

TEST(GenerateTest, UnitaryIsUnitary) {
  for (int n = 1; n <= 16; ++n) {
    const auto q = random_unitary(n, 77 + n);
    EXPECT_LE((q.adjoint() * q - ComplexMatrix::Identity(n, n)).norm(), 1e-12);
  }
}

TEST(GenerateTest, DeterministicPerSeed) {
  const auto s = spec_for(4, GenRelation::BLeqA, 5);
  EXPECT_TRUE(same_bits(random_instance(s), random_instance(s)));
  auto t = s;
  t.seed = 6;
  EXPECT_FALSE(same_bits(random_instance(s), random_instance(t)));
}

TEST(GenerateTest, OrderedPairsSatisfyRelation) {
  for (auto rel : {GenRelation::BLeqA, GenRelation::ALeqB}) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const int n = 2 + static_cast<int>(seed % 7);
      const auto inst = random_ordered_pair(spec_for(n, rel, seed));
      EXPECT_EQ(inst.declared, rel == GenRelation::BLeqA ? Relation::BLeqA : Relation::ALeqB);
      EXPECT_GE(inst.relation_margin(), -1e-12);
      EXPECT_EQ(inst.seed, seed);
    }
  }
}

TEST(GenerateTest, RankDeficientGapsOccur) {
  int deficient = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto inst = random_ordered_pair(spec_for(4, GenRelation::BLeqA, seed));
    const auto e = eig_hermitian(HermitianMatrix(inst.a - inst.b));
    if (e.min() < 1e-10 * inst.scale()) ++deficient;
  }
  EXPECT_GT(deficient, 20);
  EXPECT_LT(deficient, 100);
}

TEST(GenerateTest, CommutingPairsCommute) {
  for (auto order : {Relation::None, Relation::BLeqA, Relation::ALeqB}) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto inst = random_commuting_pair(spec_for(5, GenRelation::Commuting, seed), order);
      const ComplexMatrix c = inst.a.matrix() * inst.b.matrix() - inst.b.matrix() * inst.a.matrix();
      EXPECT_LE(c.norm(), 1e-10 * inst.scale() * inst.scale());
      EXPECT_EQ(inst.declared, order);
    }
  }
}

TEST(GenerateTest, InvalidSpecsRejected) {
  auto s = spec_for(0, GenRelation::None, 1);
  EXPECT_THROW(random_pd(s), std::invalid_argument);
  s.dim = 2;
  s.spectrum = {2.0, 1.0};
  EXPECT_THROW(random_pd(s), std::invalid_argument);
  s.spectrum = {0.0, 1.0};
  EXPECT_THROW(random_pd(s), std::invalid_argument);
  EXPECT_THROW(random_ordered_pair(spec_for(2, GenRelation::None, 1)), std::invalid_argument);
}

TEST(InstanceTest, DeclaredRelationVerified) {
  const auto big = PositiveDefiniteMatrix::diagonal(Eigen::Vector2d(2, 3));
  const auto small = PositiveDefiniteMatrix::identity(2);
  EXPECT_NO_THROW(MatrixInstance(big, small, Weight::half(), Relation::BLeqA));
  EXPECT_THROW(MatrixInstance(big, small, Weight::half(), Relation::ALeqB), std::invalid_argument);
  EXPECT_THROW(MatrixInstance(big, PositiveDefiniteMatrix::identity(3)), DimensionMismatch);
  EXPECT_EQ(parse_relation("B_LEQ_A"), Relation::BLeqA);
  EXPECT_EQ(to_string(Relation::ALeqB), "A_LEQ_B");
  EXPECT_FALSE(parse_relation("A<=B").has_value());
}
