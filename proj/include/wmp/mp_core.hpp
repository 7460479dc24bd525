#pragma once

#include "wmp/types.hpp"
#include "wmp/weight.hpp"

namespace wmp {

/// Violations of the four defining conditions of the weighted Moore-Penrose
/// inverse: AXA = A, XAX = X, (MAX)* = MAX, (NXA)* = NXA. Each residual is a
/// relative Frobenius norm (absolute when the reference operand is zero).
struct PenroseResiduals {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;
  double r4 = 0.0;

  double max() const;
  bool within(double tol) const { return max() <= tol; }
};

/// Weighted adjoint N^{-1} T* M of T between weighted spaces.
Matrix weighted_adjoint(const Matrix& t, const Weight& m, const Weight& n);

/// Ground-truth weighted Moore-Penrose inverse via the symmetric reduction
/// X = N^{-1/2} pinv(M^{1/2} A N^{-1/2}) M^{1/2}. Every block representation
/// in this library is cross-checked against this routine.
Matrix weighted_pinv_oracle(const Matrix& a, const Weight& m, const Weight& n,
                            double rank_rtol = -1.0);

/// Same reduction with fixed-rank truncation; the weighted coordinate
/// change preserves rank, so the prescribed rank applies to the inner
/// plain pseudoinverse directly.
Matrix weighted_pinv_rank(const Matrix& a, const Weight& m, const Weight& n,
                          Index rank);

PenroseResiduals verify_penrose(const Matrix& a, const Matrix& x,
                                const Weight& m, const Weight& n,
                                double pd_tol = 1e-12);

struct Inverse13Check {
  bool ok = false;
  double r1 = 0.0;  // AXA - A
  double r3 = 0.0;  // (AX)* - AX
};

/// Checks AXA = A and (AX)* = AX within tol.num_tol.
Inverse13Check is_13_inverse(const Matrix& a, const Matrix& x,
                             const Tolerances& tol = {});

/// A* X for X a (1,3)-inverse of A A*; the product equals pinv(A).
/// Throws ValidationError when X fails the (1,3) test against A A*.
Matrix pinv_via_13(const Matrix& a, const Matrix& x13,
                   const Tolerances& tol = {});

/// True exactly when X is the weighted Moore-Penrose inverse of A: checks
/// A* M A X = A* M together with annihilation of N X by the orthogonal
/// projector onto the complement of the row space of A.
bool characterization_check(const Matrix& a, const Matrix& x, const Weight& m,
                            const Weight& n, const Tolerances& tol = {});

}  // namespace wmp
