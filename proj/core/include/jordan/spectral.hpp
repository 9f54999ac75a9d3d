#pragma once

#include <optional>
#include <vector>

#include "jordan/algebra.hpp"

namespace jordan {

inline constexpr double kDefaultCondTol = 1e-10;

/// Deduplicated spectrum points. Pairwise distances exceed `dedupe_tol`.
class SpectrumSet {
 public:
  SpectrumSet(std::vector<Complex> points, double dedupe_tol);

  [[nodiscard]] const std::vector<Complex>& points() const& noexcept { return points_; }
  // By value on temporaries so `for (z : jordan_spectrum(a).points())` is safe.
  [[nodiscard]] std::vector<Complex> points() && noexcept { return std::move(points_); }
  [[nodiscard]] double dedupe_tol() const noexcept { return dedupe_tol_; }
  [[nodiscard]] double spectral_radius() const noexcept { return radius_; }
  [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }

  /// Euclidean distance from z to the nearest point.
  [[nodiscard]] double distance(Complex z) const;
  [[nodiscard]] Complex centroid() const;

 private:
  std::vector<Complex> points_;
  double dedupe_tol_;
  double radius_;
};

/// Singular values of U_a, largest first.
Eigen::VectorXd U_singular_values(const Element& a);

/// True iff sigma_min(U_a) > cond_tol * sigma_max(U_a).
bool is_invertible(const Element& a, double cond_tol = kDefaultCondTol);

/// Jordan inverse U_a^{-1}(a). Throws NotInvertible with sigma_min(U_a).
Element inverse(const Element& a, double cond_tol = kDefaultCondTol);

/// 2-norm condition number of U_a.
double U_condition(const Element& a);

/// Roots of det(U_a - 2 lambda L_a + lambda^2 I), via the companion matrix
/// [[0, I], [-U_a, 2 L_a]]. Without `dedupe_tol` the default
/// 1e-6 * (1 + max |raw eigenvalue|) is used.
SpectrumSet jordan_spectrum(const Element& a, std::optional<double> dedupe_tol = std::nullopt);

/// Raw companion eigenvalues with multiplicities (2d values).
std::vector<Complex> pencil_eigenvalues(const Element& a);

/// (zeta 1 - a)^{-1}. Throws NotInvertible near the spectrum.
Element resolvent(const Element& a, Complex zeta);

/// Certificate that lambda lies in the unbounded component of C minus the
/// spectrum. `false` means "not certified", not "bounded component".
/// Throws OnSpectrum if lambda is within dedupe_tol of a point.
bool in_unbounded_component(const SpectrumSet& s, Complex lambda);

/// Hausdorff distance between two finite point sets.
double hausdorff_distance(const std::vector<Complex>& a, const std::vector<Complex>& b);

}  // namespace jordan
