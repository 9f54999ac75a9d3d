#include "jordan/random.hpp"

#include <cmath>
#include <numbers>

namespace jordan {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller; 1 - u keeps the logarithm finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

Element random_element(const AlgebraPtr& algebra, Rng& rng, double max_norm) {
  Vector v(algebra->dim());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.complex_normal();
  const double n = v.norm();
  const double radius = max_norm * (1.0 - rng.uniform());
  if (n > 0.0) v *= radius / n;
  return {algebra, std::move(v)};
}

Element random_hermitian(const AlgebraPtr& algebra, Rng& rng, double norm) {
  const int n = algebra->order();
  if (algebra->family() != Family::matrix) throw UnsupportedAlgebra("random_hermitian needs a matrix algebra");
  Matrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.complex_normal();
  Matrix h = 0.5 * (g + g.adjoint());
  if (h.norm() > 0.0) h *= norm / h.norm();
  return from_matrix(algebra, h);
}

}  // namespace jordan
