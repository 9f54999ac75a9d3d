#include "jordan/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace jordan {

namespace {

// Single-linkage clusters of `raw` within `tol`, each reduced to its mean.
// Means of a split defective eigenvalue are far more accurate than any
// single member, so the cluster mean is the reported point.
std::vector<Complex> cluster_means(std::vector<Complex> raw, double tol) {
  std::sort(raw.begin(), raw.end(), [](Complex x, Complex y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  const std::size_t m = raw.size();
  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (std::abs(raw[i] - raw[j]) <= tol) parent[find(i)] = find(j);

  std::vector<Complex> sums(m, Complex{});
  std::vector<std::size_t> counts(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    sums[find(i)] += raw[i];
    ++counts[find(i)];
  }
  std::vector<std::pair<Complex, std::size_t>> clusters;
  for (std::size_t i = 0; i < m; ++i)
    if (counts[i] > 0) clusters.emplace_back(sums[i] / static_cast<double>(counts[i]), counts[i]);

  // Means of neighbouring clusters can drift within tol of each other.
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t i = 0; i < clusters.size() && !merged; ++i)
      for (std::size_t j = i + 1; j < clusters.size() && !merged; ++j)
        if (std::abs(clusters[i].first - clusters[j].first) <= tol) {
          const double wi = static_cast<double>(clusters[i].second);
          const double wj = static_cast<double>(clusters[j].second);
          clusters[i].first = (wi * clusters[i].first + wj * clusters[j].first) / (wi + wj);
          clusters[i].second += clusters[j].second;
          clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(j));
          merged = true;
        }
  }
  std::vector<Complex> out;
  out.reserve(clusters.size());
  for (const auto& c : clusters) out.push_back(c.first);
  return out;
}

double segment_distance(Complex p, Complex q, Complex s) {
  const Complex dir = q - p;
  const double len2 = std::norm(dir);
  if (len2 == 0.0) return std::abs(s - p);
  const double t = std::clamp((std::conj(dir) * (s - p)).real() / len2, 0.0, 1.0);
  return std::abs(s - (p + t * dir));
}

// Ray from lambda along the unit direction `u` until it reaches |z| = outer.
bool ray_clears(const SpectrumSet& s, Complex lambda, Complex u, double outer) {
  const double b = (std::conj(lambda) * u).real();
  const double disc = b * b - std::norm(lambda) + outer * outer;
  const double t_end = -b + std::sqrt(std::max(disc, 0.0));
  const Complex end = lambda + t_end * u;
  return std::all_of(s.points().begin(), s.points().end(),
                     [&](Complex p) { return segment_distance(lambda, end, p) > s.dedupe_tol(); });
}

}  // namespace

SpectrumSet::SpectrumSet(std::vector<Complex> points, double dedupe_tol)
    : points_(std::move(points)), dedupe_tol_(dedupe_tol), radius_(0.0) {
  if (points_.empty()) throw InvalidElement("a spectrum set cannot be empty");
  if (!(dedupe_tol_ >= 0.0)) throw InvalidElement("dedupe tolerance must be nonnegative");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    radius_ = std::max(radius_, std::abs(points_[i]));
    for (std::size_t j = i + 1; j < points_.size(); ++j)
      if (std::abs(points_[i] - points_[j]) <= dedupe_tol_)
        throw InvalidElement("spectrum points closer than the dedupe tolerance");
  }
}

double SpectrumSet::distance(Complex z) const {
  double best = std::numeric_limits<double>::infinity();
  for (Complex p : points_) best = std::min(best, std::abs(z - p));
  return best;
}

Complex SpectrumSet::centroid() const {
  Complex sum{};
  for (Complex p : points_) sum += p;
  return sum / static_cast<double>(points_.size());
}

Eigen::VectorXd U_singular_values(const Element& a) {
  return Eigen::JacobiSVD<Matrix>(U_operator(a).entries()).singularValues();
}

bool is_invertible(const Element& a, double cond_tol) {
  const Eigen::VectorXd sv = U_singular_values(a);
  return sv[sv.size() - 1] > cond_tol * sv[0];
}

double U_condition(const Element& a) {
  const Eigen::VectorXd sv = U_singular_values(a);
  return sv[0] / sv[sv.size() - 1];
}

Element inverse(const Element& a, double cond_tol) {
  const Eigen::JacobiSVD<Matrix> svd(U_operator(a).entries(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double smin = sv[sv.size() - 1];
  if (!(smin > cond_tol * sv[0])) throw NotInvertible(smin);
  return {a.algebra(), svd.solve(a.coeffs())};
}

std::vector<Complex> pencil_eigenvalues(const Element& a) {
  const int d = a.dim();
  Matrix companion = Matrix::Zero(2 * d, 2 * d);
  companion.topRightCorner(d, d) = Matrix::Identity(d, d);
  companion.bottomLeftCorner(d, d) = -U_operator(a).entries();
  companion.bottomRightCorner(d, d) = 2.0 * mult_operator(a).entries();
  Eigen::ComplexEigenSolver<Matrix> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw EigenSolverFailure("companion eigensolve failed for an element of " + a.algebra()->label());
  const Vector& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

SpectrumSet jordan_spectrum(const Element& a, std::optional<double> dedupe_tol) {
  std::vector<Complex> raw = pencil_eigenvalues(a);
  double tol = 0.0;
  if (dedupe_tol) {
    tol = *dedupe_tol;
  } else {
    double raw_radius = 0.0;
    for (Complex z : raw) raw_radius = std::max(raw_radius, std::abs(z));
    tol = 1e-6 * (1.0 + raw_radius);
  }
  return {cluster_means(std::move(raw), tol), tol};
}

Element resolvent(const Element& a, Complex zeta) {
  return inverse(zeta * unit_element(a.algebra()) - a);
}

bool in_unbounded_component(const SpectrumSet& s, Complex lambda) {
  if (s.distance(lambda) <= s.dedupe_tol())
    throw OnSpectrum("point lies on the spectrum within the dedupe tolerance");
  const double radius = s.spectral_radius();
  if (std::abs(lambda) > radius) return true;

  const double outer = 2.0 * radius;
  const Complex away = lambda - s.centroid();
  const double base_angle = std::abs(away) > 0.0 ? std::arg(away) : 0.0;
  if (ray_clears(s, lambda, std::polar(1.0, base_angle), outer)) return true;
  // The centroid ray is blocked; collinear spectra need a transverse ray.
  constexpr int kFan = 16;
  for (int k = 1; k < kFan; ++k) {
    const double angle = base_angle + 2.0 * std::numbers::pi * k / kFan;
    if (ray_clears(s, lambda, std::polar(1.0, angle), outer)) return true;
  }
  return false;
}

double hausdorff_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  auto directed = [](const std::vector<Complex>& from, const std::vector<Complex>& to) {
    double worst = 0.0;
    for (Complex p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (Complex q : to) best = std::min(best, std::abs(p - q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace jordan
