#include "jordan/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "jordan/spectral.hpp"

namespace jordan {

namespace {

constexpr double kSeriesTol = 1e-18;
constexpr int kMaxSeriesTerms = 400;
constexpr double kBranchMargin = 1e-8;
constexpr double kRootTarget = 0.25;
constexpr int kMaxNewtonSteps = 64;
constexpr int kMaxRoots = 64;
constexpr double kQuadratureTol = 1e-9;
constexpr int kMaxNodes = 8192;

double distance_to_branch_cut(Complex z) { return z.real() <= 0.0 ? std::abs(z.imag()) : std::abs(z); }

void require_off_branch_cut(const Element& a) {
  const SpectrumSet spectrum = jordan_spectrum(a);
  for (Complex z : spectrum.points())
    if (distance_to_branch_cut(z) <= kBranchMargin)
      throw BranchCut("spectrum point (" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) +
                      ") touches the closed negative real axis");
}

// Coupled Newton iteration for the square root (Denman-Beavers form):
//   Y <- (Y + Z^{-1}) / 2,  Z <- (Z + Y^{-1}) / 2,  Y_0 = a,  Z_0 = 1.
// Y_k equals the plain Newton iterate x_k and stays inside the associative
// subalgebra generated by a; the coupled form does not amplify rounding.
Element newton_sqrt(const Element& a) {
  Element y = a;
  Element z = unit_element(a.algebra());
  double previous = std::numeric_limits<double>::infinity();
  for (int step = 0; step < kMaxNewtonSteps; ++step) {
    const Element y_inv = inverse(y);
    const Element z_inv = inverse(z);
    Element y_next = 0.5 * (y + z_inv);
    z = 0.5 * (z + y_inv);
    const double change = (y_next - y).norm() / std::max(y_next.norm(), 1e-300);
    y = std::move(y_next);
    if (change <= 1e-14) return y;
    // Quadratic convergence has ended in rounding noise.
    if (change < 1e-9 && change >= previous) return y;
    previous = change;
  }
  throw ConvergenceFailure("square-root Newton iteration did not converge in " + std::to_string(kMaxNewtonSteps) +
                           " steps");
}

}  // namespace

Contour::Contour(Complex center_, double radius_, int nodes_) : center(center_), radius(radius_), nodes(nodes_) {
  if (!(radius > 0.0)) throw PreconditionFailed("contour radius must be positive");
  if (nodes < 32 || nodes % 2 != 0) throw PreconditionFailed("contour needs an even node count of at least 32");
}

Element exp(const Element& a) {
  const double norm = a.norm();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Element x = a / std::ldexp(1.0, squarings);

  Element sum = unit_element(a.algebra());
  Element term = sum;
  for (int k = 1; k <= kMaxSeriesTerms; ++k) {
    term = jordan_mul(term, x) / static_cast<double>(k);
    sum += term;
    const double tn = term.norm();
    if (tn == 0.0 || tn < kSeriesTol * sum.norm()) break;
  }
  for (int i = 0; i < squarings; ++i) sum = jordan_square(sum);
  return sum;
}

Element sqrt(const Element& a) {
  require_off_branch_cut(a);
  return newton_sqrt(a);
}

Element log(const Element& a) {
  require_off_branch_cut(a);
  const Element one = unit_element(a.algebra());
  Element x = a;
  int roots = 0;
  while ((x - one).norm() > kRootTarget) {
    if (roots == kMaxRoots) throw ConvergenceFailure("log: repeated square roots did not approach the unit");
    x = newton_sqrt(x);
    ++roots;
  }
  // log(1 + z) = z - z^2/2 + z^3/3 - ...
  const Element z = x - one;
  Element power = z;
  Element sum = z;
  for (int k = 2; k <= kMaxSeriesTerms; ++k) {
    power = jordan_mul(power, z);
    const Element term = power * Complex(((k % 2 == 0) ? -1.0 : 1.0) / k);
    sum += term;
    const double tn = term.norm();
    if (tn == 0.0 || tn < kSeriesTol * std::max(sum.norm(), z.norm())) break;
  }
  return sum * std::ldexp(1.0, roots);
}

Element power_mu(const Element& a, Complex mu) { return exp(mu * log(a)); }

Element cos(const Element& a) {
  constexpr Complex i{0.0, 1.0};
  return 0.5 * (exp(i * a) + exp(-i * a));
}

Element holomorphic_calculus(const std::function<Complex(Complex)>& h, const Element& a, const Contour& contour) {
  const SpectrumSet spectrum = jordan_spectrum(a);
  for (Complex z : spectrum.points())
    if (std::abs(z - contour.center) > 0.95 * contour.radius)
      throw ContourViolation("spectrum point (" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) +
                             ") is not inside the contour with a 5% margin");

  double term_scale = 0.0;
  // Sum over nodes m = offset, offset + stride, ... of the full N-node rule.
  auto partial = [&](int n_total, int offset, int stride) {
    Vector acc = Vector::Zero(a.dim());
    for (int m = offset; m < n_total; m += stride) {
      const Complex w = std::polar(1.0, 2.0 * std::numbers::pi * m / n_total);
      const Complex zeta = contour.center + contour.radius * w;
      const Vector term = (h(zeta) * contour.radius * w) * resolvent(a, zeta).coeffs();
      term_scale = std::max(term_scale, term.norm());
      acc += term;
    }
    return acc;
  };

  int n = contour.nodes;
  Vector sum = partial(n, 0, 1);
  Vector current = sum / static_cast<double>(n);
  while (true) {
    if (2 * n > kMaxNodes)
      throw QuadratureError("contour quadrature did not stabilise at " + std::to_string(kMaxNodes) + " nodes");
    sum += partial(2 * n, 1, 2);
    n *= 2;
    Vector refined = sum / static_cast<double>(n);
    const double change = (refined - current).norm();
    current = std::move(refined);
    if (change <= kQuadratureTol * current.norm() + 1e-14 * term_scale) break;
  }
  return {a.algebra(), std::move(current)};
}

Element derivative_at_zero(const HolomorphicCurve& f, double rho, int nodes) {
  if (!(rho > 0.0) || !(rho < f.radius))
    throw PreconditionFailed("derivative_at_zero needs 0 < rho < curve radius");
  if (nodes < 32) throw PreconditionFailed("derivative_at_zero needs at least 32 nodes");

  double value_scale = 0.0;
  std::optional<Element> sum;
  auto accumulate = [&](int n_total, int offset, int stride) {
    for (int m = offset; m < n_total; m += stride) {
      const Complex w = std::polar(1.0, 2.0 * std::numbers::pi * m / n_total);
      const Element value = f.eval(rho * w);
      value_scale = std::max(value_scale, value.norm());
      const Element term = value * std::conj(w);
      if (sum) {
        *sum += term;
      } else {
        sum = term;
      }
    }
  };

  int n = nodes;
  accumulate(n, 0, 1);
  Element current = *sum / (static_cast<double>(n) * rho);
  while (true) {
    if (2 * n > kMaxNodes)
      throw QuadratureError("derivative quadrature did not stabilise at " + std::to_string(kMaxNodes) + " nodes");
    accumulate(2 * n, 1, 2);
    n *= 2;
    Element refined = *sum / (static_cast<double>(n) * rho);
    const double change = (refined - current).norm();
    current = std::move(refined);
    if (change <= kQuadratureTol * current.norm() + 1e-13 * value_scale / rho) break;
  }
  return current;
}

}  // namespace jordan
