#pragma once

// Scalar functionals on Jordan algebras: characters, the spectral-valued and
// U-multiplicative checks, and reconstruction of the linear functional psi
// with f(e^x) = e^{psi(x)} from a black-box f.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jordan/algebra.hpp"
#include "jordan/spectral.hpp"

namespace jordan {

/// Black-box scalar map on an algebra. `eval` must be deterministic.
struct FunctionalHandle {
  std::function<Complex(const Element&)> eval;
  std::string label;

  Complex operator()(const Element& x) const { return eval(x); }
};

/// Residual of one sampled condition.
struct CheckResult {
  double residual = 0.0;
  bool passed = false;
  std::size_t worst_sample = 0;
};

struct CharacterReport {
  double spectral_residual = 0.0;       // max dist(f(x), J-sigma(x))
  double U_mult_residual = 0.0;         // max |f(U_x(y)) - f(x)^2 f(y)|
  double linearity_residual = 0.0;      // max |psi(ax + by) - a psi(x) - b psi(y)|
  Complex unit_value{};                 // f(1)
  double membership_residual = 0.0;     // max dist(psi(x), J-sigma(x))
  double exp_residual = 0.0;            // max |f(e^x) - e^{psi(x)}| / e^{Re psi(x)}
  double exp_image_residual = 0.0;      // max |f(e^x) - psi(e^x)|
  double multiplicativity_residual = 0.0;  // max |psi(x o y) - psi(x) psi(y)|
  double agreement_residual = 0.0;      // max |f(p) - psi(p)| over principal-component samples
  int unit_sign = 0;                    // +1, -1, or 0 if f(1) is not a sign
  bool preconditions_met = false;
  std::vector<std::string> notes;

  /// True when preconditions hold and every residual is within `tol`.
  [[nodiscard]] bool passed(double tol) const;
};

/// Coordinate functionals of every function-algebra summand, lifted to the
/// whole algebra (so direct sums contribute block characters). Throws
/// UnsupportedAlgebra if there are none.
std::vector<FunctionalHandle> characters(const AlgebraPtr& algebra);

/// x -> -f(x).
FunctionalHandle negated(const FunctionalHandle& f);
/// x -> f(x)^2.
FunctionalHandle squared(const FunctionalHandle& f);
/// x -> tr(L_x) / d. On matrix:n this is the normalized trace.
FunctionalHandle normalized_trace(const AlgebraPtr& algebra);
/// x -> <w, x> for a fixed coefficient vector w.
FunctionalHandle linear_functional(const AlgebraPtr& algebra, Vector weights, std::string label);

CheckResult is_spectral_valued(const FunctionalHandle& f, const std::vector<Element>& samples, double tol);
CheckResult is_U_multiplicative(const FunctionalHandle& f, const std::vector<std::pair<Element, Element>>& pairs,
                                double tol);

/// Sign of f(1) for a U-multiplicative f. Throws ZeroFunctional when f(1) is
/// near 0 and NotUMultiplicative when f(1) is not within 1e-6 of +1 or -1.
int unit_sign(const FunctionalHandle& f, const AlgebraPtr& algebra);

/// Continuous-branch logarithm of t -> f(exp(t x)) on [0, 1], starting from
/// log f(1) = 0. The step count doubles from `steps` while any phase
/// increment reaches pi/2, up to 2^16.
Complex reconstruct_psi(const FunctionalHandle& f, const Element& x, int steps = 64);

/// Samples random elements, checks the hypotheses and the reconstructed psi.
/// Precondition failures are reported in the result, not thrown.
CharacterReport verify_character_theorem(const FunctionalHandle& f, const AlgebraPtr& algebra, std::uint64_t seed,
                                         int n_samples);

/// |f(lambda x) - lambda f(x)|.
double homogeneity_check(const FunctionalHandle& f, const Element& x, Complex lambda);

struct AffineResolventResult {
  double residual = 0.0;  // max |f(lambda 1 - x) - (lambda - psi_x)| over used points
  std::vector<Complex> used;
  std::vector<Complex> skipped;  // not certified to lie in the unbounded component
  bool line_spectrum = false;
};

/// Compares f(lambda 1 - x) with lambda - psi_x on a grid of lambda in the
/// unbounded component of the resolvent set. When the spectrum is collinear
/// (fit within 1e-8) every lambda off the spectrum is admitted.
AffineResolventResult affine_resolvent_check(const FunctionalHandle& f, Complex psi_x, const Element& x,
                                             const std::vector<Complex>& lambda_grid);

/// True when all points lie within `tol` of a common line.
bool spectrum_is_collinear(const SpectrumSet& s, double tol = 1e-8);

/// x = a - b with a, b positive and U_a(b) = U_b(a) = 0, for Hermitian x in a
/// matrix algebra. Throws NotSelfAdjoint / UnsupportedAlgebra.
std::pair<Element, Element> pos_neg_parts(const Element& x);

/// U_{exp(a_1)} ... U_{exp(a_k)}(1) for the given exponents.
Element principal_component_element(const AlgebraPtr& algebra, const std::vector<Element>& exponents);
/// Same with `depth` seeded random exponents of norm at most 1.
Element principal_component_sample(const AlgebraPtr& algebra, int depth, std::uint64_t seed);

}  // namespace jordan
