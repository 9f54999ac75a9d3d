#pragma once

#include <functional>

#include "jordan/algebra.hpp"

namespace jordan {

/// Circle {center + radius e^{i theta}} sampled at `nodes` equispaced points.
struct Contour {
  Contour(Complex center, double radius, int nodes = 256);

  Complex center;
  double radius;
  int nodes;
};

/// Algebra-valued map analytic on the disk of radius `radius` about 0.
/// `eval` may be called from several threads at once.
struct HolomorphicCurve {
  std::function<Element(Complex)> eval;
  double radius = 1.0;
};

/// Scaling and squaring: the series runs on a / 2^s with |a| / 2^s <= 1/2.
Element exp(const Element& a);

/// Principal logarithm by inverse scaling and squaring. Throws BranchCut when
/// the spectrum comes within 1e-8 of (-inf, 0] and ConvergenceFailure if a
/// square root does not converge in 64 steps.
Element log(const Element& a);

/// Principal square root, computed inside the subalgebra generated by `a`.
Element sqrt(const Element& a);

/// exp(mu log a).
Element power_mu(const Element& a, Complex mu);

/// cos(a) = (exp(ia) + exp(-ia)) / 2.
Element cos(const Element& a);

/// (1 / 2 pi i) \oint h(zeta) (zeta 1 - a)^{-1} d zeta by the trapezoidal rule.
/// Node count doubles from `contour.nodes` until successive results agree to
/// 1e-9 relative, up to 8192 nodes.
Element holomorphic_calculus(const std::function<Complex(Complex)>& h, const Element& a, const Contour& contour);

/// f'(0) from the Cauchy coefficient formula on |zeta| = rho, doubling the
/// node count until stable to 1e-9 relative.
Element derivative_at_zero(const HolomorphicCurve& f, double rho, int nodes = 64);

}  // namespace jordan
