#pragma once

#include "wmp/types.hpp"

namespace wmp {

/// A validated Hermitian positive-definite matrix with its inverse,
/// lower-triangular Cholesky factor, and principal square root cached.
/// Immutable after construction; construction throws ValidationError when
/// the matrix fails the Hermitian / positive-definite checks.
class Weight {
 public:
  explicit Weight(Matrix value, const Tolerances& tol = {});

  static Weight identity(Index n);

  const Matrix& value() const { return value_; }
  const Matrix& inverse() const { return inverse_; }
  const Matrix& chol() const { return chol_; }
  const Matrix& sqrt() const { return sqrt_; }
  const Matrix& sqrt_inverse() const { return sqrt_inverse_; }
  Index size() const { return value_.rows(); }

  /// X with value() * X = b, through the cached Cholesky factor.
  Matrix solve(const Matrix& b) const;

 private:
  Matrix value_;
  Matrix inverse_;
  Matrix chol_;
  Matrix sqrt_;
  Matrix sqrt_inverse_;
};

/// X with w.value() * X = b. Dimension mismatch throws ValidationError.
Matrix solve_pd(const Weight& w, const Matrix& b);

}  // namespace wmp
