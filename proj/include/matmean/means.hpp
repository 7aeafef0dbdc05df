#pragma once

// Weighted arithmetic, geometric and harmonic means of positive definite
// matrices, and the closed-form right-hand sides of the mean-gap identities.

#include "matmean/hermitian.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace matmean {

/// Mean weight v in [0, 1]; v = 1/2 is the unweighted mean.
class Weight {
 public:
  explicit Weight(double v) : v_(v) {
    if (!(v >= 0.0 && v <= 1.0)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "Weight: " << v << " is outside [0, 1]";
      throw std::invalid_argument(msg.str());
    }
  }
  static Weight half() { return Weight(0.5); }

  double value() const { return v_; }
  double complement() const { return 1.0 - v_; }
  /// v(1-v)/2, the coefficient shared by the weighted bounds.
  double bound_coefficient() const { return v_ * (1.0 - v_) / 2.0; }

  friend bool operator==(Weight a, Weight b) { return a.v_ == b.v_; }

 private:
  double v_;
};

/// (1-v)A + vB.
template <typename Scalar>
PositiveDefinite<Scalar> arithmetic_mean(const PositiveDefinite<Scalar>& a,
                                         const PositiveDefinite<Scalar>& b, Weight v) {
  Hermitian<Scalar>::check_same_dim(a, b, "arithmetic_mean");
  return PositiveDefinite<Scalar>(v.complement() * a + v.value() * b);
}

/// A^{1/2} (A^{-1/2} B A^{-1/2})^v A^{1/2}, evaluated as written (A outside).
template <typename Scalar>
PositiveDefinite<Scalar> geometric_mean(const PositiveDefinite<Scalar>& a,
                                        const PositiveDefinite<Scalar>& b, Weight v) {
  Hermitian<Scalar>::check_same_dim(a, b, "geometric_mean");
  const auto root = power(a, 0.5);
  const auto inv_root = power(a, -0.5);
  const PositiveDefinite<Scalar> inner(congruence<Scalar>(inv_root, b));
  return PositiveDefinite<Scalar>(congruence<Scalar>(root, power(inner, v.value())));
}

/// ((1-v)A^{-1} + vB^{-1})^{-1}.
template <typename Scalar>
PositiveDefinite<Scalar> harmonic_mean(const PositiveDefinite<Scalar>& a,
                                       const PositiveDefinite<Scalar>& b, Weight v) {
  Hermitian<Scalar>::check_same_dim(a, b, "harmonic_mean");
  const PositiveDefinite<Scalar> mixed(v.complement() * inverse(a) + v.value() * inverse(b));
  return inverse(mixed);
}

/// (1/8)(A-B) ((A∇B + A♯B)/2)^{-1} (A-B); equals A∇B - A♯B.
template <typename Scalar>
Hermitian<Scalar> ag_gap_identity_rhs(const PositiveDefinite<Scalar>& a,
                                      const PositiveDefinite<Scalar>& b) {
  const auto arith = arithmetic_mean(a, b, Weight::half());
  const auto geo = geometric_mean(a, b, Weight::half());
  const PositiveDefinite<Scalar> middle((arith + geo) / 2.0);
  const Hermitian<Scalar> diff = a - b;
  return congruence<Scalar>(diff, inverse(middle)) / 8.0;
}

/// (1/4)(A-B)(A∇B)^{-1}(A-B); equals A∇B - A!B.
template <typename Scalar>
Hermitian<Scalar> ah_gap_identity_rhs(const PositiveDefinite<Scalar>& a,
                                      const PositiveDefinite<Scalar>& b) {
  const auto arith = arithmetic_mean(a, b, Weight::half());
  const Hermitian<Scalar> diff = a - b;
  return congruence<Scalar>(diff, inverse(arith)) / 4.0;
}

}  // namespace matmean
