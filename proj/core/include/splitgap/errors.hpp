#pragma once

#include <stdexcept>
#include <string>

namespace splitgap {

/// Base class for all computation errors raised by this library.
/// Input/usage problems use std::invalid_argument instead.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// 1/m_k <= 0: lambda is outside the positive-definite window of the mass matrix.
class NonPositiveMass : public Error {
 public:
  explicit NonPositiveMass(const std::string& msg) : Error(msg) {}
};

/// Iterative eigensolver ran out of iterations. Carries the best estimate.
class NotConverged : public Error {
 public:
  NotConverged(const std::string& msg, double best, double residual, int iterations)
      : Error(msg), best_estimate(best), residual(residual), iterations(iterations) {}
  double best_estimate;
  double residual;
  int iterations;
};

/// Dense full-spectrum path requested beyond its size limit.
class TooLarge : public Error {
 public:
  explicit TooLarge(const std::string& msg) : Error(msg) {}
};

/// Dense spectral decomposition requested beyond its size limit (toy model).
class DenseTooLarge : public Error {
 public:
  explicit DenseTooLarge(const std::string& msg) : Error(msg) {}
};

/// A factor of the closed determinant product left (0, 1).
class FactorOutOfRange : public Error {
 public:
  explicit FactorOutOfRange(const std::string& msg) : Error(msg) {}
};

/// Bisection bracket does not enclose a sign change.
class RootNotBracketed : public Error {
 public:
  explicit RootNotBracketed(const std::string& msg) : Error(msg) {}
};

/// Secular equation has no positive zero in the searched range.
class RootNotFound : public Error {
 public:
  explicit RootNotFound(const std::string& msg) : Error(msg) {}
};

/// Two successive quadrature refinements disagree beyond tolerance.
class QuadratureNotConverged : public Error {
 public:
  explicit QuadratureNotConverged(const std::string& msg) : Error(msg) {}
};

/// Requested operation is not defined for this operator choice.
class Unsupported : public Error {
 public:
  explicit Unsupported(const std::string& msg) : Error(msg) {}
};

/// Grid too coarse to certify the requested integration tolerance.
class GridTooCoarse : public Error {
 public:
  explicit GridTooCoarse(const std::string& msg) : Error(msg) {}
};

}  // namespace splitgap
