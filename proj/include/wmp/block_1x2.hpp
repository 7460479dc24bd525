#pragma once

#include "wmp/types.hpp"
#include "wmp/weight.hpp"

namespace wmp {

/// Row-partitioned operator (A, B) acting on the direct sum of two spaces,
/// with output-side weight M and input-side weight N assembled from the
/// conformable blocks N1, L, N2. Construction validates that the assembled
/// N and its Schur complement S(N) = N2 - L* N1^{-1} L are Hermitian
/// positive definite.
struct Partition1x2 {
  Matrix a;   // m x p
  Matrix b;   // m x q
  Weight m;   // m
  Weight n1;  // p
  Matrix l;   // p x q
  Matrix n2;  // q x q
  Weight n;        // assembled [[N1, L], [L*, N2]]
  Weight schur_n;  // S(N)
  Tolerances tol;

  Partition1x2(Matrix a_, Matrix b_, Weight m_, Weight n1_, Matrix l_,
               Matrix n2_, const Tolerances& tol_ = {});

  Index rows() const { return a.rows(); }
  Index p() const { return a.cols(); }
  Index q() const { return b.cols(); }
  /// Horizontal concatenation [A | B].
  Matrix ab() const;
};

/// The two row blocks of a pseudoinverse of a 1x2 partition, stacked as
/// [X1; X2].
struct Stacked1x2 {
  Matrix x1;
  Matrix x2;
  Matrix stacked() const;
};

/// C = (I - A X) B with X the weighted MP inverse of A under (M, N1);
/// satisfies C* M A = 0.
Matrix complement_c(const Partition1x2& p);

/// Intermediates of the `thm33` representation, exposed for tracing.
struct Thm33Intermediates {
  Matrix c;
  Matrix d;
  Matrix s_tilde;
  Matrix u_tilde;
};

/// Method `thm32`: weighted MP inverse of the pair (A, C), C the weighted
/// complement of B, through the coupling weight S = N2 - L*(I - XA)N1^{-1}L.
Stacked1x2 wpinv_1x2_thm32(const Partition1x2& p);

/// Method `thm33`: weighted MP inverse of (A, B) through D = X B and the
/// shifted coupling weight S-tilde.
Stacked1x2 wpinv_1x2_thm33(const Partition1x2& p,
                           Thm33Intermediates* inter = nullptr);

/// Method `unified`: same result for an arbitrary positive-definite
/// auxiliary weight N3, connected to `thm33` by the reweighting operator.
Stacked1x2 wpinv_1x2_unified(const Partition1x2& p, const Weight& n3);

/// `unified` with its default auxiliary weight N3 = S(N).
Stacked1x2 wpinv_1x2_unified(const Partition1x2& p);

/// Method `xu`: the S(N)-specialized representation through Sigma, Y and
/// Omega = (I + Y Sigma* N1 Sigma)^{-1} (...).
Stacked1x2 wpinv_1x2_xu(const Partition1x2& p);

/// (A, B) pseudoinverse recovered from `thm32` on the transformed problem
/// (A, C) under the congruence N -> T* N T, T = [[I, -D], [0, I]]. Used to
/// close the four-way agreement loop and by the `compare` command.
Stacked1x2 wpinv_1x2_via_thm32(const Partition1x2& p);

}  // namespace wmp
