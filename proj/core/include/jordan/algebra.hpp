#pragma once

// Finite-dimensional complex Jordan algebras given by structure constants.
//
// An algebra of dimension d is described by a dense rank-3 tensor c with
// e_i o e_j = sum_k c(i,j,k) e_k, together with a unit vector. Every family
// (full matrix algebras, spin factors, function algebras, direct sums) is
// built into the same representation so that products, U-maps and powers run
// through one code path.

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "jordan/errors.hpp"

namespace jordan {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

enum class Family { matrix, spin, function, direct_sum, custom };

/// Dense structure constants, indexed (i, j, k) for e_i o e_j -> e_k.
class StructureTensor {
 public:
  explicit StructureTensor(int dim);

  [[nodiscard]] int dim() const noexcept { return dim_; }
  Complex& operator()(int i, int j, int k) { return data_[index(i, j, k)]; }
  [[nodiscard]] const Complex& operator()(int i, int j, int k) const {
    return data_[index(i, j, k)];
  }

 private:
  [[nodiscard]] std::size_t index(int i, int j, int k) const noexcept {
    return (static_cast<std::size_t>(i) * dim_ + j) * dim_ + k;
  }

  int dim_;
  std::vector<Complex> data_;
};

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Immutable algebra specification. Construct through the family factories
/// or `make_algebra`; both validate commutativity, the unit and the Jordan
/// identity on basis pairs.
class Algebra {
 public:
  struct Shape {
    Family family = Family::custom;
    int order = 0;                 // n for matrix:n, k for spin:k and fn:k
    std::vector<AlgebraPtr> blocks;  // the two summands of a direct sum
  };

  [[nodiscard]] int dim() const noexcept { return dim_; }
  [[nodiscard]] const Vector& unit() const noexcept { return unit_; }
  [[nodiscard]] const std::string& label() const noexcept { return label_; }
  [[nodiscard]] Family family() const noexcept { return shape_.family; }
  [[nodiscard]] int order() const noexcept { return shape_.order; }
  [[nodiscard]] const std::vector<AlgebraPtr>& blocks() const noexcept { return shape_.blocks; }
  [[nodiscard]] const StructureTensor& structure() const noexcept { return tensor_; }

  /// Coefficients of a o b. Exactly commutative in floating point.
  [[nodiscard]] Vector multiply(const Vector& a, const Vector& b) const;

  /// Matrix of b -> a o b.
  [[nodiscard]] Matrix left_multiplication(const Vector& a) const;

  /// Two algebras are interchangeable when they are the same object or
  /// share a family descriptor (descriptors determine the basis).
  [[nodiscard]] bool same_as(const Algebra& other) const noexcept;

  /// Largest Jordan-identity residual over all ordered basis pairs.
  [[nodiscard]] double basis_jordan_residual() const;

  static AlgebraPtr create(StructureTensor tensor, Vector unit, std::string label, Shape shape);

 private:
  Algebra(StructureTensor tensor, Vector unit, std::string label, Shape shape);

  struct PairColumn {
    int i;
    int j;
    Vector column;  // c(i, j, .)
  };

  int dim_;
  StructureTensor tensor_;
  Vector unit_;
  std::string label_;
  Shape shape_;
  std::vector<PairColumn> pairs_;  // i <= j, skipping identically-zero products
};

/// Validated custom algebra. Asymmetric structure constants are rejected.
AlgebraPtr make_algebra(StructureTensor tensor, Vector unit, std::string label);

/// M_n(C) under a o b = (ab + ba)/2, basis E_{ij} at index i*n + j.
AlgebraPtr make_matrix_jordan(int n);
/// C1 + C^k with (a,u) o (b,v) = (ab + <u,v>, av + bu); index 0 is the scalar part.
AlgebraPtr make_spin_factor(int k);
/// C^k with the pointwise product.
AlgebraPtr make_function_algebra(int k);
/// Block-diagonal direct sum; A occupies the leading coordinates.
AlgebraPtr make_direct_sum(const AlgebraPtr& a, const AlgebraPtr& b);

/// A coefficient vector in a fixed algebra. Value type; always finite.
class Element {
 public:
  Element(AlgebraPtr algebra, Vector coeffs);

  [[nodiscard]] const AlgebraPtr& algebra() const noexcept { return algebra_; }
  [[nodiscard]] const Vector& coeffs() const noexcept { return coeffs_; }
  [[nodiscard]] int dim() const noexcept { return static_cast<int>(coeffs_.size()); }
  [[nodiscard]] Complex operator[](int i) const { return coeffs_[i]; }
  /// Euclidean norm of the coefficient vector.
  [[nodiscard]] double norm() const { return coeffs_.norm(); }

  Element& operator+=(const Element& other);
  Element& operator-=(const Element& other);
  Element& operator*=(Complex s);

 private:
  AlgebraPtr algebra_;
  Vector coeffs_;
};

Element operator+(Element a, const Element& b);
Element operator-(Element a, const Element& b);
Element operator-(Element a);
Element operator*(Complex s, Element a);
Element operator*(Element a, Complex s);
Element operator/(Element a, Complex s);

void require_same_algebra(const Element& a, const Element& b);

Element unit_element(const AlgebraPtr& algebra);
Element zero_element(const AlgebraPtr& algebra);
Element basis_element(const AlgebraPtr& algebra, int index);
Element make_element(const AlgebraPtr& algebra, std::initializer_list<Complex> coeffs);

/// Linear map on an algebra, stored as a d x d matrix acting on coefficients.
class OperatorMatrix {
 public:
  OperatorMatrix(AlgebraPtr algebra, Matrix entries);

  [[nodiscard]] const AlgebraPtr& algebra() const noexcept { return algebra_; }
  [[nodiscard]] const Matrix& entries() const noexcept { return entries_; }

  [[nodiscard]] Element operator()(const Element& x) const;
  [[nodiscard]] OperatorMatrix operator*(const OperatorMatrix& rhs) const;

 private:
  AlgebraPtr algebra_;
  Matrix entries_;
};

Element jordan_mul(const Element& a, const Element& b);
Element jordan_square(const Element& a);

/// L_a : b -> a o b. Column j holds the coefficients of a o e_j.
OperatorMatrix mult_operator(const Element& a);

/// U_a = 2 L_a^2 - L_{a^2}.
OperatorMatrix U_operator(const Element& a);
/// U_{a,c}(b) = (a o b) o c + (c o b) o a - (a o c) o b.
OperatorMatrix U_pair_operator(const Element& a, const Element& c);

/// U_a(b) evaluated with products only (no operator matrices).
Element U_apply(const Element& a, const Element& b);
Element U_pair_apply(const Element& a, const Element& c, const Element& b);

/// a^n by binary powering; a^0 is the unit.
Element jordan_power(const Element& a, std::uint64_t n);

// Matrix-family conversions. Both throw UnsupportedAlgebra for other families.
Matrix to_matrix(const Element& a);
Element from_matrix(const AlgebraPtr& algebra, const Matrix& m);

// Direct-sum helpers: `which` is 0 for the leading summand, 1 for the trailing one.
Element block_of(const Element& a, int which);
Element join_blocks(const AlgebraPtr& sum, const Element& first, const Element& second);

}  // namespace jordan
