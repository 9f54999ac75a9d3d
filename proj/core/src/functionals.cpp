#include "jordan/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "jordan/calculus.hpp"
#include "jordan/random.hpp"

namespace jordan {

namespace {

constexpr double kHypothesisTol = 1e-6;
constexpr int kMaxPathSteps = 1 << 16;
constexpr double kMaxPhaseStep = std::numbers::pi / 2.0;

void collect_characters(const AlgebraPtr& leaf, int offset, std::vector<FunctionalHandle>& out) {
  switch (leaf->family()) {
    case Family::function:
      for (int i = 0; i < leaf->dim(); ++i) {
        const int index = offset + i;
        out.push_back({[index](const Element& x) { return x[index]; }, "char:" + std::to_string(out.size())});
      }
      break;
    case Family::direct_sum:
      collect_characters(leaf->blocks()[0], offset, out);
      collect_characters(leaf->blocks()[1], offset + leaf->blocks()[0]->dim(), out);
      break;
    default: break;
  }
}

}  // namespace

bool CharacterReport::passed(double tol) const {
  return preconditions_met && spectral_residual <= tol && U_mult_residual <= tol && linearity_residual <= tol &&
         membership_residual <= tol && exp_residual <= tol && exp_image_residual <= tol &&
         multiplicativity_residual <= tol && agreement_residual <= tol;
}

std::vector<FunctionalHandle> characters(const AlgebraPtr& algebra) {
  std::vector<FunctionalHandle> out;
  collect_characters(algebra, 0, out);
  if (out.empty()) throw UnsupportedAlgebra("no known characters on " + algebra->label());
  return out;
}

FunctionalHandle negated(const FunctionalHandle& f) {
  return {[g = f.eval](const Element& x) { return -g(x); }, "neg" + f.label};
}

FunctionalHandle squared(const FunctionalHandle& f) {
  return {[g = f.eval](const Element& x) {
            const Complex v = g(x);
            return v * v;
          },
          "sq" + f.label};
}

FunctionalHandle normalized_trace(const AlgebraPtr& algebra) {
  const double d = algebra->dim();
  return {[d](const Element& x) { return mult_operator(x).entries().trace() / d; }, "trace"};
}

FunctionalHandle linear_functional(const AlgebraPtr& algebra, Vector weights, std::string label) {
  if (weights.size() != algebra->dim()) throw InvalidElement("functional weights have the wrong length");
  return {[w = std::move(weights)](const Element& x) { return (w.transpose() * x.coeffs()).value(); },
          std::move(label)};
}

CheckResult is_spectral_valued(const FunctionalHandle& f, const std::vector<Element>& samples, double tol) {
  if (samples.empty()) throw PreconditionFailed("is_spectral_valued needs samples");
  CheckResult result;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double r = jordan_spectrum(samples[i]).distance(f(samples[i]));
    if (r > result.residual || i == 0) {
      result.residual = r;
      result.worst_sample = i;
    }
  }
  result.passed = result.residual <= tol;
  return result;
}

CheckResult is_U_multiplicative(const FunctionalHandle& f, const std::vector<std::pair<Element, Element>>& pairs,
                                double tol) {
  if (pairs.empty()) throw PreconditionFailed("is_U_multiplicative needs sample pairs");
  CheckResult result;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [x, y] = pairs[i];
    const Complex fx = f(x);
    const double r = std::abs(f(U_apply(x, y)) - fx * fx * f(y));
    if (r > result.residual || i == 0) {
      result.residual = r;
      result.worst_sample = i;
    }
  }
  result.passed = result.residual <= tol;
  return result;
}

int unit_sign(const FunctionalHandle& f, const AlgebraPtr& algebra) {
  const Complex v = f(unit_element(algebra));
  if (std::abs(v) < 0.5) throw ZeroFunctional("f(1) is " + std::to_string(std::abs(v)) + " in modulus");
  if (std::abs(v * v * v - v) > 1e-8 || std::min(std::abs(v - 1.0), std::abs(v + 1.0)) > 1e-6)
    throw NotUMultiplicative("f(1) is not within 1e-6 of +1 or -1");
  return v.real() > 0.0 ? 1 : -1;
}

Complex reconstruct_psi(const FunctionalHandle& f, const Element& x, int steps) {
  if (steps < 64) throw PreconditionFailed("reconstruct_psi needs at least 64 steps");
  const Complex at_unit = f(unit_element(x.algebra()));
  if (std::abs(at_unit - 1.0) > 1e-6) throw PreconditionFailed("reconstruct_psi needs f(1) = 1");

  for (int n = steps; n <= kMaxPathSteps; n *= 2) {
    Complex previous = at_unit;
    double phase = 0.0;
    bool resolved = true;
    for (int k = 1; k <= n; ++k) {
      const Complex value = f(exp((static_cast<double>(k) / n) * x));
      if (std::abs(value) == 0.0 || std::abs(value) < 1e-12 * std::abs(previous))
        throw ZeroOnPath("f(exp(t x)) vanishes near t = " + std::to_string(static_cast<double>(k) / n));
      const double step = std::arg(value / previous);
      if (std::abs(step) >= kMaxPhaseStep) {
        resolved = false;
        break;
      }
      phase += step;
      previous = value;
    }
    if (resolved) return {std::log(std::abs(previous) / std::abs(at_unit)), phase};
  }
  throw BranchTrackingFailed("phase increments stayed above pi/2 at " + std::to_string(kMaxPathSteps) + " steps");
}

CharacterReport verify_character_theorem(const FunctionalHandle& f, const AlgebraPtr& algebra, std::uint64_t seed,
                                         int n_samples) {
  CharacterReport report;
  Rng rng(seed);
  std::vector<Element> xs;
  std::vector<Element> ys;
  std::vector<std::pair<Element, Element>> pairs;
  for (int i = 0; i < n_samples; ++i) {
    xs.push_back(random_element(algebra, rng));
    ys.push_back(random_element(algebra, rng));
    pairs.emplace_back(xs.back(), ys.back());
  }

  report.unit_value = f(unit_element(algebra));
  try {
    report.unit_sign = unit_sign(f, algebra);
  } catch (const Error& e) {
    report.notes.emplace_back(std::string("unit value: ") + e.what());
  }
  const CheckResult spectral = is_spectral_valued(f, xs, kHypothesisTol);
  const CheckResult umult = is_U_multiplicative(f, pairs, kHypothesisTol);
  report.spectral_residual = spectral.residual;
  report.U_mult_residual = umult.residual;
  if (!spectral.passed) report.notes.emplace_back("not spectral-valued on the sample set");
  if (!umult.passed) report.notes.emplace_back("not U-multiplicative on the sample set");
  if (report.unit_sign == -1) report.notes.emplace_back("f(1) = -1: apply the checks to -f");
  report.preconditions_met = spectral.passed && umult.passed && report.unit_sign == 1;
  if (!report.preconditions_met) return report;

  auto psi = [&](const Element& x) { return reconstruct_psi(f, x); };
  for (int i = 0; i < n_samples; ++i) {
    const Element& x = xs[i];
    const Element& y = ys[i];
    const Complex px = psi(x);
    const Complex py = psi(y);
    const Complex alpha = rng.complex_normal();
    const Complex beta = rng.complex_normal();
    report.linearity_residual =
        std::max(report.linearity_residual, std::abs(psi(alpha * x + beta * y) - alpha * px - beta * py));
    report.membership_residual = std::max(report.membership_residual, jordan_spectrum(x).distance(px));
    const Element ex = exp(x);
    const Complex fex = f(ex);
    report.exp_residual = std::max(report.exp_residual, std::abs(fex - std::exp(px)) / std::exp(px.real()));
    report.exp_image_residual = std::max(report.exp_image_residual, std::abs(fex - psi(ex)));
    report.multiplicativity_residual =
        std::max(report.multiplicativity_residual, std::abs(psi(jordan_mul(x, y)) - px * py));
  }
  constexpr int kPrincipalSamples = 20;
  for (int i = 0; i < kPrincipalSamples; ++i) {
    const Element p = principal_component_sample(algebra, 3, seed ^ (0x9E3779B97F4A7C15ULL * (i + 1)));
    report.agreement_residual = std::max(report.agreement_residual, std::abs(f(p) - psi(p)));
  }
  return report;
}

double homogeneity_check(const FunctionalHandle& f, const Element& x, Complex lambda) {
  return std::abs(f(lambda * x) - lambda * f(x));
}

bool spectrum_is_collinear(const SpectrumSet& s, double tol) {
  const auto& pts = s.points();
  if (pts.size() <= 2) return true;
  const Complex c = s.centroid();
  // Principal axis of the centred points: arg of sum (p - c)^2 is twice its angle.
  Complex second{};
  for (Complex p : pts) second += (p - c) * (p - c);
  const Complex axis = std::abs(second) > 0.0 ? std::polar(1.0, std::arg(second) / 2.0) : Complex(1.0);
  double worst = 0.0;
  for (Complex p : pts) worst = std::max(worst, std::abs((std::conj(axis) * (p - c)).imag()));
  return worst <= tol;
}

AffineResolventResult affine_resolvent_check(const FunctionalHandle& f, Complex psi_x, const Element& x,
                                             const std::vector<Complex>& lambda_grid) {
  const SpectrumSet s = jordan_spectrum(x);
  AffineResolventResult result;
  result.line_spectrum = spectrum_is_collinear(s);
  const Element one = unit_element(x.algebra());
  for (Complex lambda : lambda_grid) {
    bool admitted = false;
    if (s.distance(lambda) > s.dedupe_tol()) admitted = result.line_spectrum || in_unbounded_component(s, lambda);
    if (!admitted) {
      result.skipped.push_back(lambda);
      continue;
    }
    result.used.push_back(lambda);
    result.residual = std::max(result.residual, std::abs(f(lambda * one - x) - (lambda - psi_x)));
  }
  return result;
}

std::pair<Element, Element> pos_neg_parts(const Element& x) {
  const Matrix m = to_matrix(x);
  if ((m - m.adjoint()).norm() > 1e-10 * std::max(1.0, m.norm()))
    throw NotSelfAdjoint("pos_neg_parts needs a Hermitian element");
  const Matrix h = 0.5 * (m + m.adjoint());
  const Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) throw EigenSolverFailure("Hermitian eigensolve failed");
  const Eigen::VectorXd& ev = solver.eigenvalues();
  const Matrix& q = solver.eigenvectors();
  const Eigen::VectorXd plus = ev.cwiseMax(0.0);
  const Eigen::VectorXd minus = (-ev).cwiseMax(0.0);
  const Matrix a = q * plus.cast<Complex>().asDiagonal() * q.adjoint();
  const Matrix b = q * minus.cast<Complex>().asDiagonal() * q.adjoint();
  return {from_matrix(x.algebra(), a), from_matrix(x.algebra(), b)};
}

Element principal_component_element(const AlgebraPtr& algebra, const std::vector<Element>& exponents) {
  Element y = unit_element(algebra);
  for (auto it = exponents.rbegin(); it != exponents.rend(); ++it) y = U_apply(exp(*it), y);
  return y;
}

Element principal_component_sample(const AlgebraPtr& algebra, int depth, std::uint64_t seed) {
  if (depth < 1) throw PreconditionFailed("principal_component_sample needs depth >= 1");
  Rng rng(seed);
  std::vector<Element> exponents;
  for (int i = 0; i < depth; ++i) exponents.push_back(random_element(algebra, rng));
  return principal_component_element(algebra, exponents);
}

}  // namespace jordan
