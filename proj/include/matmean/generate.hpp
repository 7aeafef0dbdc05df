#pragma once

// Seeded generation of positive definite instances that satisfy a required
// Loewner relation.

#include "matmean/instance.hpp"

#include <cstdint>

namespace matmean {

enum class GenRelation { None, BLeqA, ALeqB, Commuting };

struct SpectrumRange {
  double lo = 1e-2;
  double hi = 1e2;
};

struct GenSpec {
  int dim = 2;
  GenRelation relation = GenRelation::None;
  SpectrumRange spectrum{};
  // Magnitude of the PSD perturbation that creates the order.
  double gap_scale = 1.0;
  std::uint64_t seed = 0;
};

/// Splitmix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// child_seed = mix(master_seed, check_ordinal, trial).
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t ordinal,
                                    std::uint64_t trial) {
  std::uint64_t s = splitmix64(master);
  s = splitmix64(s ^ (ordinal * 0xD1B54A32D192ED03ULL));
  return splitmix64(s ^ (trial * 0x8CB92BA72F3D8DD7ULL));
}

/// Q diag(lambda) Q* with Q from the QR factorization of a complex Gaussian
/// matrix (phase-corrected, so Haar distributed) and lambda log-uniform in
/// the spectrum range.
PositiveDefiniteMatrix random_pd(const GenSpec& spec);

/// Haar-distributed unitary of the given size.
ComplexMatrix random_unitary(int dim, std::uint64_t seed);

/// Pairs base with base + gap (gap PSD): B_LEQ_A returns (base + gap, base),
/// A_LEQ_B returns (base, base + gap).
MatrixInstance make_ordered_pair(const PositiveDefiniteMatrix& base, const HermitianMatrix& gap,
                                 Relation relation, Weight v = Weight::half(),
                                 std::uint64_t seed = 0);

/// Ordered or commuting pair; relation None is rejected. The declared
/// relation is verified and generation retried (up to 5 times, with fresh
/// derived seeds) before giving up with std::runtime_error.
MatrixInstance random_ordered_pair(const GenSpec& spec, Weight v = Weight::half());

/// Any relation, including independent A and B.
MatrixInstance random_instance(const GenSpec& spec, Weight v = Weight::half());

/// A and B sharing one random eigenbasis. With order B_LEQ_A (A_LEQ_B) the
/// spectra are paired so b_i <= a_i (a_i <= b_i).
MatrixInstance random_commuting_pair(const GenSpec& spec, Relation order,
                                     Weight v = Weight::half());

}  // namespace matmean
