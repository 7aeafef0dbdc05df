#pragma once

#include "matmean/means.hpp"

#include <cstdint>
#include <optional>
#include <string_view>

namespace matmean {

/// Loewner relation between the two matrices of an instance.
enum class Relation { None, BLeqA, ALeqB };

std::string_view to_string(Relation r);
std::optional<Relation> parse_relation(std::string_view s);

/// Declared-order tolerance: the relation must hold with margin
/// >= -kRelationTolerance * max(1, ||A||, ||B||).
inline constexpr double kRelationTolerance = 1e-10;

struct MatrixInstance {
  PositiveDefiniteMatrix a;
  PositiveDefiniteMatrix b;
  Weight v = Weight::half();
  Relation declared = Relation::None;
  std::uint64_t seed = 0;

  MatrixInstance(PositiveDefiniteMatrix a_, PositiveDefiniteMatrix b_, Weight v_ = Weight::half(),
                 Relation declared_ = Relation::None, std::uint64_t seed_ = 0);

  Eigen::Index dim() const { return a.dim(); }
  double scale() const;
  /// Normalized margin of the declared relation (+inf for Relation::None).
  double relation_margin() const;
  MatrixInstance with_weight(Weight w) const;
};

}  // namespace matmean
