#pragma once

#include <cstdint>
#include <random>

#include "jordan/algebra.hpp"

namespace jordan {

/// Seeded generator whose draws are identical on every platform: mt19937_64
/// for raw bits, with uniform and Gaussian variates derived here rather than
/// through the implementation-defined std distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  /// Standard complex Gaussian (independent real and imaginary parts, variance 1/2 each).
  Complex complex_normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Complex Gaussian coefficients rescaled to norm `max_norm * u`, u uniform in (0, 1].
Element random_element(const AlgebraPtr& algebra, Rng& rng, double max_norm = 1.0);

/// Random Hermitian matrix element of a matrix algebra with Frobenius norm `norm`.
Element random_hermitian(const AlgebraPtr& algebra, Rng& rng, double norm = 1.0);

}  // namespace jordan
