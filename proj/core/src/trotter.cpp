#include "jordan/trotter.hpp"

#include <cmath>
#include <limits>

#include "jordan/parallel.hpp"
#include "jordan/spectral.hpp"

namespace jordan {

namespace {

constexpr double kEntire = std::numeric_limits<double>::infinity();

Matrix matrix_power(const Matrix& m, std::uint64_t n) {
  Matrix result = Matrix::Identity(m.rows(), m.cols());
  Matrix base = m;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

const Element& require(const std::optional<Element>& e, const char* what) {
  if (!e) throw PreconditionFailed(std::string("formula needs input ") + what);
  return *e;
}

Complex scaled(std::uint64_t n) { return 1.0 / static_cast<double>(n); }

}  // namespace

std::string_view to_string(FormulaId id) {
  switch (id) {
    case FormulaId::jordan_product: return "jordan_product";
    case FormulaId::U_single: return "U_single";
    case FormulaId::U_pair: return "U_pair";
    case FormulaId::general: return "general";
    case FormulaId::associative_identity: return "associative_identity";
  }
  return "unknown";
}

FormulaId parse_formula(std::string_view name) {
  for (FormulaId id : {FormulaId::jordan_product, FormulaId::U_single, FormulaId::U_pair, FormulaId::general,
                       FormulaId::associative_identity})
    if (to_string(id) == name) return id;
  throw PreconditionFailed("unknown formula '" + std::string(name) + "'");
}

SequencePlan reciprocal_plan() {
  return {[](std::uint64_t n) { return Complex(1.0 / static_cast<double>(n)); },
          [](std::uint64_t n) { return Complex(static_cast<double>(n)); }, Complex(1.0)};
}

SequencePlan quadratic_plan(double scale) {
  return {[](std::uint64_t n) {
            const double nd = static_cast<double>(n);
            return Complex(1.0 / (nd * nd));
          },
          [scale](std::uint64_t n) {
            const double nd = static_cast<double>(n);
            return Complex(scale * nd * nd);
          },
          Complex(scale)};
}

std::vector<std::uint64_t> geometric_grid(std::uint64_t min, std::uint64_t max, std::uint64_t ratio) {
  if (min < 1 || ratio < 2 || max < min) throw PreconditionFailed("geometric grid needs min >= 1, ratio >= 2, max >= min");
  std::vector<std::uint64_t> grid;
  for (std::uint64_t n = min; n <= max; n *= ratio) {
    grid.push_back(n);
    if (n > max / ratio) break;
  }
  return grid;
}

Element trotter_jordan(const Element& a, const Element& b, std::uint64_t n) {
  require_same_algebra(a, b);
  const Complex s = scaled(n);
  return jordan_power(jordan_mul(exp(s * a), exp(s * b)), n);
}

Element trotter_U(const Element& a, const Element& b, std::uint64_t n) {
  require_same_algebra(a, b);
  const Complex s = scaled(n);
  return jordan_power(U_apply(exp(s * a), exp(s * b)), n);
}

Element trotter_U_pair(const Element& a, const Element& b, const Element& c, std::uint64_t n) {
  require_same_algebra(a, b);
  require_same_algebra(a, c);
  const Complex s = scaled(n);
  return jordan_power(U_pair_apply(exp(s * a), exp(s * c), exp(s * b)), n);
}

HolomorphicCurve jordan_product_curve(const Element& a, const Element& b) {
  require_same_algebra(a, b);
  return {[a, b](Complex z) { return jordan_mul(exp(z * a), exp(z * b)); }, kEntire};
}

HolomorphicCurve U_single_curve(const Element& a, const Element& b) {
  require_same_algebra(a, b);
  return {[a, b](Complex z) { return U_apply(exp(z * a), exp(z * b)); }, kEntire};
}

HolomorphicCurve U_pair_curve(const Element& a, const Element& b, const Element& c) {
  require_same_algebra(a, b);
  require_same_algebra(a, c);
  return {[a, b, c](Complex z) { return U_pair_apply(exp(z * a), exp(z * c), exp(z * b)); }, kEntire};
}

HolomorphicCurve mixed_curve(const Element& a, const Element& b, const Element& c, const Element& d) {
  require_same_algebra(a, b);
  require_same_algebra(a, c);
  require_same_algebra(a, d);
  const Element d3 = jordan_power(d, 3);
  return {[a, b, c, d3](Complex z) {
            const Element middle = unit_element(a.algebra()) + z * b + (z * z * z) * d3;
            return jordan_mul(jordan_mul(exp(z * a), middle), cos(z * c));
          },
          kEntire};
}

ConvergenceReport general_trotter(const HolomorphicCurve& f, const SequencePlan& plan,
                                  const std::vector<std::uint64_t>& n_grid) {
  const Element at_zero = f.eval(Complex{});
  const Element one = unit_element(at_zero.algebra());
  if ((at_zero - one).norm() > 1e-12 * std::max(1.0, one.norm()))
    throw PreconditionFailed("general_trotter needs f(0) = 1");

  double previous_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (i > 0 && n_grid[i] <= n_grid[i - 1]) throw PreconditionFailed("grid must be strictly increasing");
    const double gap = std::abs(plan.lambda_seq(n_grid[i]) * plan.mu_seq(n_grid[i]) - plan.limit_lambda);
    if (gap > previous_gap * (1.0 + 1e-9) + 1e-14)
      throw PreconditionFailed("lambda_n mu_n does not approach the stated limit on this grid");
    previous_gap = gap;
  }

  const double rho = std::isfinite(f.radius) ? std::min(0.5, 0.5 * f.radius) : 0.5;
  const Element target = exp(plan.limit_lambda * derivative_at_zero(f, rho));

  ConvergenceReport report;
  report.formula = FormulaId::general;
  report.target_norm = target.norm();
  for (std::uint64_t n : n_grid) {
    try {
      const Element approx = power_mu(f.eval(plan.lambda_seq(n)), plan.mu_seq(n));
      report.n_grid.push_back(n);
      report.errors.push_back((approx - target).norm());
    } catch (const BranchCut&) {
      report.skipped.push_back(n);
    }
  }
  if (report.n_grid.size() < 4)
    throw InsufficientData("only " + std::to_string(report.n_grid.size()) + " usable grid points");
  report.fitted_slope = fit_loglog_slope(report.n_grid, report.errors, report.target_norm);
  return report;
}

double associative_identity_check(const Element& a, const Element& b, std::uint64_t n) {
  require_same_algebra(a, b);
  if (a.algebra()->family() != Family::matrix)
    throw UnsupportedAlgebra("the associative identity needs a matrix algebra, got " + a.algebra()->label());
  const Complex s = scaled(n);
  const Matrix ea = to_matrix(exp(s * a));
  const Matrix eb = to_matrix(exp(s * b));
  const Matrix e_minus_a = to_matrix(exp(-s * a));
  const Matrix e_2a = to_matrix(exp(2.0 * s * a));
  const Matrix lhs = matrix_power(ea * eb * ea, n);
  const Matrix rhs = e_minus_a * matrix_power(e_2a * eb, n) * ea;
  return (lhs - rhs).norm() / lhs.norm();
}

Element formula_target(FormulaId id, const TrotterInputs& in) {
  switch (id) {
    case FormulaId::jordan_product: return exp(in.a + in.b);
    case FormulaId::U_single: return exp(2.0 * in.a + in.b);
    case FormulaId::U_pair: return exp(in.a + in.b + require(in.c, "c"));
    case FormulaId::general: return exp(in.a + in.b);
    case FormulaId::associative_identity: return zero_element(in.a.algebra());
  }
  throw PreconditionFailed("unknown formula");
}

ConvergenceReport convergence_report(FormulaId id, const TrotterInputs& in, const std::vector<std::uint64_t>& n_grid,
                                     unsigned threads) {
  if (n_grid.size() < 6) throw PreconditionFailed("convergence_report needs at least 6 grid points");
  for (std::size_t i = 1; i < n_grid.size(); ++i)
    if (n_grid[i] < 2 * n_grid[i - 1]) throw PreconditionFailed("grid ratio must be at least 2");

  if (id == FormulaId::general) {
    const HolomorphicCurve f = mixed_curve(in.a, in.b, require(in.c, "c"), require(in.d, "d"));
    return general_trotter(f, reciprocal_plan(), n_grid);
  }

  const Element target = formula_target(id, in);
  if (id == FormulaId::U_pair) require(in.c, "c");
  if (id == FormulaId::associative_identity) associative_identity_check(in.a, in.b, 1);

  ConvergenceReport report;
  report.formula = id;
  report.n_grid = n_grid;
  report.target_norm = target.norm();
  report.errors.assign(n_grid.size(), 0.0);
  parallel_for(n_grid.size(), threads, [&](std::size_t i) {
    const std::uint64_t n = n_grid[i];
    double error = 0.0;
    switch (id) {
      case FormulaId::jordan_product: error = (trotter_jordan(in.a, in.b, n) - target).norm(); break;
      case FormulaId::U_single: error = (trotter_U(in.a, in.b, n) - target).norm(); break;
      case FormulaId::U_pair: error = (trotter_U_pair(in.a, in.b, *in.c, n) - target).norm(); break;
      case FormulaId::associative_identity: error = associative_identity_check(in.a, in.b, n); break;
      case FormulaId::general: break;
    }
    report.errors[i] = error;
  });
  report.fitted_slope = fit_loglog_slope(report.n_grid, report.errors, report.target_norm);
  return report;
}

double noise_floor(std::uint64_t n, double target_norm) {
  const double rounding = 16.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon();
  return std::max(kNoiseFloor, rounding * std::max(1.0, target_norm));
}

std::optional<double> fit_loglog_slope(const std::vector<std::uint64_t>& n, const std::vector<double>& errors,
                                       double target_norm) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < n.size() && i < errors.size(); ++i) {
    if (!(errors[i] >= noise_floor(n[i], target_norm))) continue;
    xs.push_back(std::log(static_cast<double>(n[i])));
    ys.push_back(std::log(errors[i]));
  }
  if (xs.size() < 2) return std::nullopt;
  const double m = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / m;
  const double my = sy / m;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace jordan
