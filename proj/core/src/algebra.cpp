#include "jordan/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace jordan {

namespace {

constexpr double kSymmetryTol = 1e-14;
constexpr double kUnitTol = 1e-12;
constexpr double kJordanTol = 1e-12;

bool all_finite(const Vector& v) {
  return std::all_of(v.data(), v.data() + v.size(),
                     [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

std::string summand_label(const Algebra& a) {
  const std::string& label = a.label();
  if (a.family() == Family::direct_sum) return label.substr(4);  // drop "sum:"
  return label;
}

}  // namespace

StructureTensor::StructureTensor(int dim) : dim_(dim) {
  if (dim < 1) throw InvalidAlgebra("algebra dimension must be positive");
  data_.assign(static_cast<std::size_t>(dim) * dim * dim, Complex{0.0, 0.0});
}

Algebra::Algebra(StructureTensor tensor, Vector unit, std::string label, Shape shape)
    : dim_(tensor.dim()),
      tensor_(std::move(tensor)),
      unit_(std::move(unit)),
      label_(std::move(label)),
      shape_(std::move(shape)) {
  for (int i = 0; i < dim_; ++i) {
    for (int j = i; j < dim_; ++j) {
      Vector column(dim_);
      for (int k = 0; k < dim_; ++k) column[k] = tensor_(i, j, k);
      if (column.cwiseAbs().maxCoeff() == 0.0) continue;
      pairs_.push_back({i, j, std::move(column)});
    }
  }
}

AlgebraPtr Algebra::create(StructureTensor tensor, Vector unit, std::string label, Shape shape) {
  const int d = tensor.dim();
  if (unit.size() != d) throw InvalidAlgebra("unit length does not match the algebra dimension");
  if (!all_finite(unit)) throw InvalidAlgebra("unit has non-finite coefficients");

  double scale = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        const Complex c = tensor(i, j, k);
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
          throw InvalidAlgebra("structure constants must be finite");
        scale = std::max(scale, std::abs(c));
      }

  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        const Complex cij = tensor(i, j, k);
        const Complex cji = tensor(j, i, k);
        if (std::abs(cij - cji) > kSymmetryTol * std::max(scale, 1.0))
          throw InvalidAlgebra("structure constants are not commutative at (" + std::to_string(i) + "," +
                               std::to_string(j) + "," + std::to_string(k) + ")");
        const Complex mean = 0.5 * (cij + cji);
        tensor(i, j, k) = mean;
        tensor(j, i, k) = mean;
      }

  auto algebra = AlgebraPtr(new Algebra(std::move(tensor), std::move(unit), std::move(label), std::move(shape)));

  const Matrix unit_op = algebra->left_multiplication(algebra->unit());
  if ((unit_op - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > kUnitTol)
    throw InvalidAlgebra("unit vector does not act as the identity");

  const double residual = algebra->basis_jordan_residual();
  if (residual > kJordanTol * std::max(scale * scale * scale, 1.0))
    throw InvalidAlgebra("Jordan identity fails on basis pairs (residual " + std::to_string(residual) + ")");

  return algebra;
}

Vector Algebra::multiply(const Vector& a, const Vector& b) const {
  Vector out = Vector::Zero(dim_);
  for (const auto& p : pairs_) {
    // a_i b_j + a_j b_i is symmetric under a <-> b bit for bit.
    const Complex s = (p.i == p.j) ? a[p.i] * b[p.i] : a[p.i] * b[p.j] + a[p.j] * b[p.i];
    if (s == Complex{}) continue;
    out += s * p.column;
  }
  return out;
}

Matrix Algebra::left_multiplication(const Vector& a) const {
  Matrix m = Matrix::Zero(dim_, dim_);
  for (const auto& p : pairs_) {
    // e_i o e_j contributes a_i to column j and a_j to column i.
    m.col(p.j) += a[p.i] * p.column;
    if (p.i != p.j) m.col(p.i) += a[p.j] * p.column;
  }
  return m;
}

bool Algebra::same_as(const Algebra& other) const noexcept {
  if (this == &other) return true;
  return family() != Family::custom && other.family() != Family::custom && dim_ == other.dim_ &&
         label_ == other.label_;
}

double Algebra::basis_jordan_residual() const {
  double worst = 0.0;
  for (int i = 0; i < dim_; ++i) {
    const Vector ei = Vector::Unit(dim_, i);
    const Vector ei2 = multiply(ei, ei);
    for (int j = 0; j < dim_; ++j) {
      const Vector ej = Vector::Unit(dim_, j);
      const Vector lhs = multiply(multiply(ei2, ej), ei);
      const Vector rhs = multiply(multiply(ei, ej), ei2);
      worst = std::max(worst, (lhs - rhs).norm());
    }
  }
  return worst;
}

AlgebraPtr make_algebra(StructureTensor tensor, Vector unit, std::string label) {
  return Algebra::create(std::move(tensor), std::move(unit), std::move(label), {});
}

AlgebraPtr make_matrix_jordan(int n) {
  if (n < 1) throw InvalidAlgebra("matrix algebra order must be at least 1");
  const int d = n * n;
  StructureTensor c(d);
  auto idx = [n](int r, int s) { return r * n + s; };
  // E_ij E_kl = delta_jk E_il, so E_ij o E_kl = (delta_jk E_il + delta_li E_kj) / 2.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          if (j == k) c(idx(i, j), idx(k, l), idx(i, l)) += 0.5;
          if (l == i) c(idx(i, j), idx(k, l), idx(k, j)) += 0.5;
        }
  Vector unit = Vector::Zero(d);
  for (int i = 0; i < n; ++i) unit[idx(i, i)] = 1.0;
  return Algebra::create(std::move(c), std::move(unit), "matrix:" + std::to_string(n),
                         {Family::matrix, n, {}});
}

AlgebraPtr make_spin_factor(int k) {
  if (k < 1) throw InvalidAlgebra("spin factor rank must be at least 1");
  const int d = k + 1;
  StructureTensor c(d);
  c(0, 0, 0) = 1.0;
  for (int i = 1; i < d; ++i) {
    c(0, i, i) = 1.0;
    c(i, 0, i) = 1.0;
    c(i, i, 0) = 1.0;
  }
  Vector unit = Vector::Zero(d);
  unit[0] = 1.0;
  return Algebra::create(std::move(c), std::move(unit), "spin:" + std::to_string(k),
                         {Family::spin, k, {}});
}

AlgebraPtr make_function_algebra(int k) {
  if (k < 1) throw InvalidAlgebra("function algebra size must be at least 1");
  StructureTensor c(k);
  for (int i = 0; i < k; ++i) c(i, i, i) = 1.0;
  return Algebra::create(std::move(c), Vector::Ones(k), "fn:" + std::to_string(k),
                         {Family::function, k, {}});
}

AlgebraPtr make_direct_sum(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (!a || !b) throw InvalidAlgebra("direct sum of a null algebra");
  const int da = a->dim();
  const int db = b->dim();
  StructureTensor c(da + db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      for (int k = 0; k < da; ++k) c(i, j, k) = a->structure()(i, j, k);
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < db; ++k) c(da + i, da + j, da + k) = b->structure()(i, j, k);
  Vector unit(da + db);
  unit << a->unit(), b->unit();
  std::string label = "sum:" + summand_label(*a) + "+" + summand_label(*b);
  return Algebra::create(std::move(c), std::move(unit), std::move(label), {Family::direct_sum, 0, {a, b}});
}

Element::Element(AlgebraPtr algebra, Vector coeffs) : algebra_(std::move(algebra)), coeffs_(std::move(coeffs)) {
  if (!algebra_) throw InvalidElement("element without an algebra");
  if (coeffs_.size() != algebra_->dim())
    throw InvalidElement("expected " + std::to_string(algebra_->dim()) + " coefficients, got " +
                         std::to_string(coeffs_.size()));
  if (!all_finite(coeffs_)) throw InvalidElement("element has non-finite coefficients");
}

void require_same_algebra(const Element& a, const Element& b) {
  if (!a.algebra()->same_as(*b.algebra())) throw AlgebraMismatch();
}

Element& Element::operator+=(const Element& other) {
  require_same_algebra(*this, other);
  coeffs_ += other.coeffs_;
  return *this;
}

Element& Element::operator-=(const Element& other) {
  require_same_algebra(*this, other);
  coeffs_ -= other.coeffs_;
  return *this;
}

Element& Element::operator*=(Complex s) {
  coeffs_ *= s;
  return *this;
}

Element operator+(Element a, const Element& b) { return a += b; }
Element operator-(Element a, const Element& b) { return a -= b; }
Element operator-(Element a) { return a *= -1.0; }
Element operator*(Complex s, Element a) { return a *= s; }
Element operator*(Element a, Complex s) { return a *= s; }
Element operator/(Element a, Complex s) { return a *= (1.0 / s); }

Element unit_element(const AlgebraPtr& algebra) { return {algebra, algebra->unit()}; }
Element zero_element(const AlgebraPtr& algebra) { return {algebra, Vector::Zero(algebra->dim())}; }

Element basis_element(const AlgebraPtr& algebra, int index) {
  if (index < 0 || index >= algebra->dim()) throw InvalidElement("basis index out of range");
  return {algebra, Vector::Unit(algebra->dim(), index)};
}

Element make_element(const AlgebraPtr& algebra, std::initializer_list<Complex> coeffs) {
  Vector v(static_cast<Eigen::Index>(coeffs.size()));
  Eigen::Index i = 0;
  for (const Complex& z : coeffs) v[i++] = z;
  return {algebra, std::move(v)};
}

OperatorMatrix::OperatorMatrix(AlgebraPtr algebra, Matrix entries)
    : algebra_(std::move(algebra)), entries_(std::move(entries)) {
  if (entries_.rows() != algebra_->dim() || entries_.cols() != algebra_->dim())
    throw InvalidElement("operator matrix has the wrong shape");
}

Element OperatorMatrix::operator()(const Element& x) const {
  if (!algebra_->same_as(*x.algebra())) throw AlgebraMismatch();
  return {algebra_, entries_ * x.coeffs()};
}

OperatorMatrix OperatorMatrix::operator*(const OperatorMatrix& rhs) const {
  if (!algebra_->same_as(*rhs.algebra_)) throw AlgebraMismatch();
  return {algebra_, entries_ * rhs.entries_};
}

Element jordan_mul(const Element& a, const Element& b) {
  require_same_algebra(a, b);
  return {a.algebra(), a.algebra()->multiply(a.coeffs(), b.coeffs())};
}

Element jordan_square(const Element& a) { return jordan_mul(a, a); }

OperatorMatrix mult_operator(const Element& a) {
  return {a.algebra(), a.algebra()->left_multiplication(a.coeffs())};
}

OperatorMatrix U_operator(const Element& a) {
  const Matrix la = a.algebra()->left_multiplication(a.coeffs());
  const Matrix la2 = a.algebra()->left_multiplication(jordan_square(a).coeffs());
  return {a.algebra(), 2.0 * la * la - la2};
}

OperatorMatrix U_pair_operator(const Element& a, const Element& c) {
  require_same_algebra(a, c);
  const Algebra& alg = *a.algebra();
  const Matrix la = alg.left_multiplication(a.coeffs());
  const Matrix lc = alg.left_multiplication(c.coeffs());
  const Matrix lac = alg.left_multiplication(jordan_mul(a, c).coeffs());
  return {a.algebra(), lc * la + la * lc - lac};
}

Element U_pair_apply(const Element& a, const Element& c, const Element& b) {
  require_same_algebra(a, c);
  require_same_algebra(a, b);
  return jordan_mul(jordan_mul(a, b), c) + jordan_mul(jordan_mul(c, b), a) - jordan_mul(jordan_mul(a, c), b);
}

// Shares the pair path so that U_{a,a}(b) and U_a(b) agree bit for bit.
Element U_apply(const Element& a, const Element& b) { return U_pair_apply(a, a, b); }

Element jordan_power(const Element& a, std::uint64_t n) {
  Element result = unit_element(a.algebra());
  if (n == 0) return result;
  Element base = a;
  bool first = true;
  while (n > 0) {
    if (n & 1U) {
      result = first ? base : jordan_mul(result, base);
      first = false;
    }
    n >>= 1U;
    if (n > 0) base = jordan_square(base);
  }
  return result;
}

Matrix to_matrix(const Element& a) {
  const Algebra& alg = *a.algebra();
  if (alg.family() != Family::matrix) throw UnsupportedAlgebra("to_matrix needs a matrix algebra, got " + alg.label());
  const int n = alg.order();
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = a[i * n + j];
  return m;
}

Element from_matrix(const AlgebraPtr& algebra, const Matrix& m) {
  if (algebra->family() != Family::matrix)
    throw UnsupportedAlgebra("from_matrix needs a matrix algebra, got " + algebra->label());
  const int n = algebra->order();
  if (m.rows() != n || m.cols() != n) throw InvalidElement("matrix size does not match the algebra");
  Vector v(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) v[i * n + j] = m(i, j);
  return {algebra, std::move(v)};
}

Element block_of(const Element& a, int which) {
  const Algebra& alg = *a.algebra();
  if (alg.family() != Family::direct_sum) throw UnsupportedAlgebra("block_of needs a direct sum, got " + alg.label());
  if (which != 0 && which != 1) throw InvalidElement("direct sums have exactly two blocks");
  const AlgebraPtr& first = alg.blocks()[0];
  const AlgebraPtr& block = alg.blocks()[which];
  const int offset = which == 0 ? 0 : first->dim();
  return {block, a.coeffs().segment(offset, block->dim())};
}

Element join_blocks(const AlgebraPtr& sum, const Element& first, const Element& second) {
  if (sum->family() != Family::direct_sum) throw UnsupportedAlgebra("join_blocks needs a direct sum");
  if (!first.algebra()->same_as(*sum->blocks()[0]) || !second.algebra()->same_as(*sum->blocks()[1]))
    throw AlgebraMismatch();
  Vector v(sum->dim());
  v << first.coeffs(), second.coeffs();
  return {sum, std::move(v)};
}

}  // namespace jordan
