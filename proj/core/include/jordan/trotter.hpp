#pragma once

// Jordan Lie-Trotter formulae and convergence reporting.
//
//   (e^{a/n} o e^{b/n})^n              -> e^{a+b}
//   (U_{e^{a/n}}(e^{b/n}))^n           -> e^{2a+b}
//   (U_{e^{a/n},e^{c/n}}(e^{b/n}))^n   -> e^{a+b+c}
//
// and, for a holomorphic curve f with f(0) = 1, lambda_n -> 0 and
// lambda_n mu_n -> lambda, f(lambda_n)^{mu_n} -> exp(lambda f'(0)).

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jordan/algebra.hpp"
#include "jordan/calculus.hpp"

namespace jordan {

enum class FormulaId { jordan_product, U_single, U_pair, general, associative_identity };

std::string_view to_string(FormulaId id);
/// Accepts the names printed by to_string. Throws PreconditionFailed otherwise.
FormulaId parse_formula(std::string_view name);

/// Errors below this are treated as rounding noise.
inline constexpr double kNoiseFloor = 1e-12;

/// Rounding noise after n products of a base with O(eps) error grows like
/// n * eps * |target|; the floor used for grid point n is the larger of that
/// bound (with a factor 16) and kNoiseFloor.
double noise_floor(std::uint64_t n, double target_norm);

struct ConvergenceReport {
  FormulaId formula = FormulaId::jordan_product;
  std::vector<std::uint64_t> n_grid;  // usable grid points, increasing
  std::vector<double> errors;         // |approx_n - target|
  /// Least-squares slope of log error against log n over errors above the
  /// noise floor. Empty when fewer than two errors clear it (converged exactly).
  std::optional<double> fitted_slope;
  double target_norm = 0.0;
  std::vector<std::uint64_t> skipped;  // grid points where the approximant was undefined

  [[nodiscard]] bool exact() const noexcept { return !fitted_slope.has_value(); }
};

struct SequencePlan {
  std::function<Complex(std::uint64_t)> lambda_seq;
  std::function<Complex(std::uint64_t)> mu_seq;
  Complex limit_lambda;
};

/// lambda_n = 1/n, mu_n = n.
SequencePlan reciprocal_plan();
/// lambda_n = 1/n^2, mu_n = scale * n^2, so lambda = scale.
SequencePlan quadratic_plan(double scale);

/// min, min*ratio, ... up to max. Throws PreconditionFailed on a bad triple.
std::vector<std::uint64_t> geometric_grid(std::uint64_t min, std::uint64_t max, std::uint64_t ratio);

Element trotter_jordan(const Element& a, const Element& b, std::uint64_t n);
Element trotter_U(const Element& a, const Element& b, std::uint64_t n);
Element trotter_U_pair(const Element& a, const Element& b, const Element& c, std::uint64_t n);

/// The three curves from which the formulae above follow.
HolomorphicCurve jordan_product_curve(const Element& a, const Element& b);
HolomorphicCurve U_single_curve(const Element& a, const Element& b);
HolomorphicCurve U_pair_curve(const Element& a, const Element& b, const Element& c);
/// zeta -> (e^{zeta a} o (1 + zeta b + zeta^3 d^3)) o cos(zeta c); f'(0) = a + b.
HolomorphicCurve mixed_curve(const Element& a, const Element& b, const Element& c, const Element& d);

/// power_mu(f(lambda_n), mu_n) against exp(lambda f'(0)) on each grid point.
/// Grid points whose base touches the branch cut are skipped and recorded.
/// Throws InsufficientData when fewer than four points remain.
ConvergenceReport general_trotter(const HolomorphicCurve& f, const SequencePlan& plan,
                                  const std::vector<std::uint64_t>& n_grid);

/// Relative residual of
///   (e^{a/n} e^{b/n} e^{a/n})^n = e^{-a/n} (e^{2a/n} e^{b/n})^n e^{a/n}
/// with ordinary matrix products. Matrix algebras only.
double associative_identity_check(const Element& a, const Element& b, std::uint64_t n);

/// Right-hand sides for convergence_report. `c` is used by U_pair and the
/// mixed curve, `d` only by the mixed curve (the `general` formula).
struct TrotterInputs {
  Element a;
  Element b;
  std::optional<Element> c;
  std::optional<Element> d;
};

/// Analytic target of a formula: e^{a+b}, e^{2a+b}, e^{a+b+c}, e^{a+b}
/// (general, mixed curve) or the identity residual's zero.
Element formula_target(FormulaId id, const TrotterInputs& in);

/// Errors on a geometric grid (at least 6 points, ratio at least 2).
/// Grid points are evaluated on up to `threads` workers; results are
/// independent of the worker count.
ConvergenceReport convergence_report(FormulaId id, const TrotterInputs& in, const std::vector<std::uint64_t>& n_grid,
                                     unsigned threads = 1);

/// Least-squares slope of log(errors) over log(n), ignoring errors below
/// noise_floor(n, target_norm). Empty when fewer than two points remain.
std::optional<double> fit_loglog_slope(const std::vector<std::uint64_t>& n, const std::vector<double>& errors,
                                       double target_norm = 0.0);

}  // namespace jordan
