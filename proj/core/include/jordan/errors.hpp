#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jordan {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AlgebraMismatch : public Error {
 public:
  AlgebraMismatch() : Error("operands belong to different algebras") {}
};

class InvalidAlgebra : public Error {
 public:
  using Error::Error;
};

class UnsupportedAlgebra : public Error {
 public:
  using Error::Error;
};

class InvalidElement : public Error {
 public:
  using Error::Error;
};

/// U_a is singular (or numerically so); carries the smallest singular value.
class NotInvertible : public Error {
 public:
  explicit NotInvertible(double sigma_min)
      : Error("element is not invertible (smallest singular value of U_a = " +
              std::to_string(sigma_min) + ")"),
        sigma_min_(sigma_min) {}
  [[nodiscard]] double sigma_min() const noexcept { return sigma_min_; }

 private:
  double sigma_min_;
};

class EigenSolverFailure : public Error {
 public:
  using Error::Error;
};

class OnSpectrum : public Error {
 public:
  using Error::Error;
};

class BranchCut : public Error {
 public:
  using Error::Error;
};

class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

class ContourViolation : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

class NotSelfAdjoint : public Error {
 public:
  using Error::Error;
};

class ZeroFunctional : public Error {
 public:
  using Error::Error;
};

class NotUMultiplicative : public Error {
 public:
  using Error::Error;
};

class BranchTrackingFailed : public Error {
 public:
  using Error::Error;
};

class ZeroOnPath : public Error {
 public:
  using Error::Error;
};

class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

/// Malformed algebra descriptor; `offset` is the byte where parsing stopped.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  [[nodiscard]] std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace jordan
