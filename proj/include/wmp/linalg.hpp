#pragma once

#include <vector>

#include "wmp/types.hpp"

namespace wmp {

/// Conjugate transpose.
Matrix adjoint(const Matrix& a);

/// Moore-Penrose inverse via singular value decomposition. Singular values
/// sigma_i <= rank_rtol * sigma_max are treated as zero; a negative
/// rank_rtol selects the default max(rows, cols) * machine epsilon.
Matrix pinv(const Matrix& a, double rank_rtol = -1.0);

/// Moore-Penrose inverse keeping exactly the `rank` largest singular
/// values. Used for operators whose exact rank is known from the algebra
/// (complements and Schur complements), where a cancellation-produced
/// matrix of pure rounding noise must invert to zero.
Matrix pinv_rank(const Matrix& a, Index rank);

/// Singular values above max(rank_rtol * sigma_max, sigma_floor) count
/// toward the rank.
Index numerical_rank(const Matrix& a, double rank_rtol = -1.0,
                     double sigma_floor = 0.0);

/// Principal positive-definite square root of a Hermitian PD matrix,
/// computed from its eigendecomposition.
Matrix sqrt_pd(const Matrix& w, const Tolerances& tol = {});

double effective_rank_rtol(const Matrix& a, double rank_rtol);

bool all_finite(const Matrix& a);
void require_finite(const Matrix& a, const std::string& name);

/// Frobenius norm of `diff` relative to the norm of `ref`; absolute when
/// `ref` is numerically zero.
double rel_residual(const Matrix& diff, const Matrix& ref,
                    double pd_tol = 1e-12);

/// Relative Frobenius distance between two matrices (reference = `ref`).
double rel_diff(const Matrix& x, const Matrix& ref, double pd_tol = 1e-12);

// Block assembly helpers.
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix block_2x2(const Matrix& a11, const Matrix& a12, const Matrix& a21,
                 const Matrix& a22);
Matrix block_diag(const Matrix& a, const Matrix& b);

/// rows x cols matrix with `x` in the top-left corner, zero elsewhere.
Matrix embed_top_left(const Matrix& x, Index rows, Index cols);

/// Inverse through LU with partial pivoting, guarded by a condition
/// estimate: above cond_warn a note is appended to `warnings` (when given),
/// above cond_fail a NumericalError is thrown.
Matrix invert_checked(const Matrix& a, const Tolerances& tol,
                      std::vector<std::string>* warnings,
                      const std::string& context);

}  // namespace wmp
