#include "wmp/weight.hpp"

#include "wmp/linalg.hpp"

namespace wmp {

Weight::Weight(Matrix value, const Tolerances& tol) : value_(std::move(value)) {
  if (value_.rows() != value_.cols())
    throw ValidationError("weight: matrix must be square");
  require_finite(value_, "weight");
  const Index n = value_.rows();
  if (n == 0) {
    inverse_ = chol_ = sqrt_ = sqrt_inverse_ = value_;
    return;
  }
  if (rel_residual(value_ - value_.adjoint(), value_, tol.pd_tol) >
      tol.herm_tol)
    throw ValidationError("weight: matrix is not Hermitian");

  Eigen::LLT<Matrix> llt(value_);
  if (llt.info() != Eigen::Success)
    throw ValidationError("weight: Cholesky failed, not positive definite");
  chol_ = llt.matrixL();
  // Cholesky pivots are the squared diagonal entries of L.
  for (Index i = 0; i < n; ++i) {
    const double d = chol_(i, i).real();
    if (!(d * d > tol.pd_tol))
      throw ValidationError("weight: Cholesky pivot " + std::to_string(i) +
                            " at or below the positive-definiteness floor");
  }
  inverse_ = llt.solve(Matrix::Identity(n, n));

  Eigen::SelfAdjointEigenSolver<Matrix> es(value_);
  if (es.info() != Eigen::Success)
    throw ValidationError("weight: eigendecomposition did not converge");
  if (!(es.eigenvalues().minCoeff() > tol.pd_tol))
    throw ValidationError("weight: eigenvalue at or below the "
                          "positive-definiteness floor");
  const Matrix& v = es.eigenvectors();
  sqrt_ = v * es.eigenvalues().cwiseSqrt().cast<Complex>().asDiagonal() *
          v.adjoint();
  sqrt_inverse_ = v *
                  es.eigenvalues().cwiseSqrt().cwiseInverse().cast<Complex>()
                      .asDiagonal() *
                  v.adjoint();
}

Weight Weight::identity(Index n) { return Weight(Matrix::Identity(n, n)); }

Matrix Weight::solve(const Matrix& b) const {
  if (b.rows() != value_.rows())
    throw ValidationError("solve_pd: row count of right-hand side (" +
                          std::to_string(b.rows()) +
                          ") does not match weight size (" +
                          std::to_string(value_.rows()) + ")");
  if (value_.rows() == 0) return b;
  // Forward/back substitution against the cached factor.
  Matrix y = chol_.triangularView<Eigen::Lower>().solve(b);
  return chol_.adjoint().triangularView<Eigen::Upper>().solve(y);
}

Matrix solve_pd(const Weight& w, const Matrix& b) { return w.solve(b); }

}  // namespace wmp
