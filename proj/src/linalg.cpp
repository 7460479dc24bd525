#include "wmp/linalg.hpp"

#include <cmath>
#include <limits>

namespace wmp {

Matrix adjoint(const Matrix& a) { return a.adjoint(); }

double effective_rank_rtol(const Matrix& a, double rank_rtol) {
  if (rank_rtol >= 0.0) return rank_rtol;
  return static_cast<double>(std::max(a.rows(), a.cols())) *
         std::numeric_limits<double>::epsilon();
}

Matrix pinv(const Matrix& a, double rank_rtol) {
  if (a.rows() == 0 || a.cols() == 0) return Matrix::Zero(a.cols(), a.rows());
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success)
    throw NumericalError("pinv: singular value decomposition did not converge");
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double cutoff = effective_rank_rtol(a, rank_rtol) * sigma(0);
  Eigen::VectorXcd inv_sigma = Eigen::VectorXcd::Zero(sigma.size());
  for (Index i = 0; i < sigma.size(); ++i)
    if (sigma(i) > cutoff && sigma(i) > 0.0) inv_sigma(i) = 1.0 / sigma(i);
  return svd.matrixV() * inv_sigma.asDiagonal() * svd.matrixU().adjoint();
}

Matrix pinv_rank(const Matrix& a, Index rank) {
  if (a.rows() == 0 || a.cols() == 0) return Matrix::Zero(a.cols(), a.rows());
  if (rank <= 0) return Matrix::Zero(a.cols(), a.rows());
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success)
    throw NumericalError("pinv_rank: singular value decomposition did not "
                         "converge");
  const Eigen::VectorXd& sigma = svd.singularValues();
  rank = std::min(rank, static_cast<Index>(sigma.size()));
  Eigen::VectorXcd inv_sigma = Eigen::VectorXcd::Zero(sigma.size());
  for (Index i = 0; i < rank; ++i) {
    if (!(sigma(i) > 0.0))
      throw NumericalError("pinv_rank: requested rank exceeds the number of "
                           "nonzero singular values");
    inv_sigma(i) = 1.0 / sigma(i);
  }
  return svd.matrixV() * inv_sigma.asDiagonal() * svd.matrixU().adjoint();
}

Index numerical_rank(const Matrix& a, double rank_rtol, double sigma_floor) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(a);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double cutoff =
      std::max(effective_rank_rtol(a, rank_rtol) * sigma(0), sigma_floor);
  Index rank = 0;
  for (Index i = 0; i < sigma.size(); ++i)
    if (sigma(i) > cutoff && sigma(i) > 0.0) ++rank;
  return rank;
}

Matrix sqrt_pd(const Matrix& w, const Tolerances& tol) {
  if (w.rows() != w.cols())
    throw ValidationError("sqrt_pd: matrix must be square");
  if (w.rows() == 0) return w;
  if (rel_residual(w - w.adjoint(), w, tol.pd_tol) > tol.herm_tol)
    throw NumericalError("sqrt_pd: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(w);
  if (es.info() != Eigen::Success)
    throw NumericalError("sqrt_pd: eigendecomposition did not converge");
  if (es.eigenvalues().minCoeff() <= tol.pd_tol)
    throw NumericalError("sqrt_pd: matrix is not positive definite");
  return es.eigenvectors() *
         es.eigenvalues().cwiseSqrt().cast<Complex>().asDiagonal() *
         es.eigenvectors().adjoint();
}

bool all_finite(const Matrix& a) {
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag()))
        return false;
  return true;
}

void require_finite(const Matrix& a, const std::string& name) {
  if (!all_finite(a))
    throw ValidationError(name + ": entries must be finite");
}

double rel_residual(const Matrix& diff, const Matrix& ref, double pd_tol) {
  const double d = diff.norm();
  const double r = ref.norm();
  return r > pd_tol ? d / r : d;
}

double rel_diff(const Matrix& x, const Matrix& ref, double pd_tol) {
  return rel_residual(x - ref, ref, pd_tol);
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() + b.rows(), a.cols());
  out << a, b;
  return out;
}

Matrix block_2x2(const Matrix& a11, const Matrix& a12, const Matrix& a21,
                 const Matrix& a22) {
  Matrix out(a11.rows() + a21.rows(), a11.cols() + a12.cols());
  out << a11, a12, a21, a22;
  return out;
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

Matrix embed_top_left(const Matrix& x, Index rows, Index cols) {
  Matrix out = Matrix::Zero(rows, cols);
  out.topLeftCorner(x.rows(), x.cols()) = x;
  return out;
}

Matrix invert_checked(const Matrix& a, const Tolerances& tol,
                      std::vector<std::string>* warnings,
                      const std::string& context) {
  if (a.rows() != a.cols())
    throw ValidationError(context + ": matrix must be square");
  if (a.rows() == 0) return a;
  Eigen::PartialPivLU<Matrix> lu(a);
  Matrix inv = lu.inverse();
  const double cond = a.norm() * inv.norm();
  if (!all_finite(inv) || !(cond < tol.cond_fail))
    throw NumericalError(context + ": matrix is numerically singular" +
                         " (condition estimate " + std::to_string(cond) + ")");
  if (cond > tol.cond_warn && warnings != nullptr)
    warnings->push_back(context + ": condition estimate " +
                        std::to_string(cond) + " exceeds " +
                        std::to_string(tol.cond_warn));
  return inv;
}

}  // namespace wmp
