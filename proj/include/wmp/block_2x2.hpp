#pragma once

#include <optional>
#include <utility>

#include "wmp/block_1x2.hpp"
#include "wmp/types.hpp"
#include "wmp/weight.hpp"

namespace wmp {

/// A positive-definite weight together with its 2x2 partition: the leading
/// block as a weight of its own, the coupling solve W11^{-1} W12, and the
/// Schur complement W22 - W12* W11^{-1} W12 validated positive definite.
struct PartitionedWeight {
  Weight full;
  Index d1 = 0;
  Weight block11;
  Matrix w12;
  Weight schur;
  Matrix coupling;  // W11^{-1} W12

  PartitionedWeight(Weight full_, Index d1_, const Tolerances& tol = {});

  Index d2() const { return full.size() - d1; }
};

/// 2x2 partitioned operator with optional partitioned weights on both
/// sides. Row blocks have heights k1, k2; column blocks have widths h1, h2.
struct Partition2x2 {
  Matrix a11, a12, a21, a22;
  std::optional<PartitionedWeight> m;  // output side, size k1 + k2
  std::optional<PartitionedWeight> n;  // input side, size h1 + h2
  Tolerances tol;

  Partition2x2(Matrix a11_, Matrix a12_, Matrix a21_, Matrix a22_,
               std::optional<Weight> m_ = std::nullopt,
               std::optional<Weight> n_ = std::nullopt,
               const Tolerances& tol_ = {});

  Index k1() const { return a11.rows(); }
  Index k2() const { return a21.rows(); }
  Index h1() const { return a11.cols(); }
  Index h2() const { return a12.cols(); }
  Matrix assembled() const;
};

/// Schur complement A22 - A21 pinv(A11) A12.
Matrix schur_a(const Partition2x2& p);

/// The full-rank factors F1 = [-pinv(A11) A12; I] and
/// F2 = (-A21 pinv(A11), I).
std::pair<Matrix, Matrix> f_factors(const Partition2x2& p);

/// Raised by pinv_2x2_special when the two kernel/range compatibility
/// conditions (I - A11 pinv(A11)) A12 = 0 and A21 (I - pinv(A11) A11) = 0
/// fail; carries both residuals.
class PreconditionError : public NumericalError {
 public:
  PreconditionError(double r12, double r21);
  double residual_12() const { return r12_; }
  double residual_21() const { return r21_; }

 private:
  double r12_;
  double r21_;
};

/// Method `special`: pseudoinverse of the assembled matrix under the two
/// compatibility conditions above, through the generalized Schur inverse
/// S(A)^g and the projector corrections X_L, X_R.
Matrix pinv_2x2_special(const Partition2x2& p);

struct PositivePinv {
  Matrix pinv;
  Matrix inv13;  // a (1,3)-inverse of the assembled matrix
};

/// Method `positive`: the Hermitian positive-semidefinite specialization,
/// which also yields an explicit (1,3)-inverse.
PositivePinv pinv_2x2_positive(const Partition2x2& p);

/// Method `general`: pseudoinverse of an arbitrary 2x2 partition through
/// the Gram operator E = A A* and the positive-case machinery applied to E.
Matrix pinv_2x2_general(const Partition2x2& p);

/// Complete intermediate record of the weighted 2x2 pipeline; materialized
/// on every call and used verbatim by the golden-value tests.
struct Wmp2x2Trace {
  Matrix a_coupling;  // N11^{-1} N12
  Matrix b_coupling;  // M11^{-1} M12
  Matrix b11, b12, b21, b22;
  Matrix b_sharp;
  Matrix e11, e12, e21, e22;
  Matrix e11_dag;
  Matrix f1e;
  Matrix f1e_sharp;
  Matrix f1e_gram;  // F1(E)^# F1(E)
  Matrix se;
  Matrix z1, z2, z3;
  Matrix se_g;
  Matrix t;  // left block of F1(E)^#
  Thm33Intermediates sub;  // C, D, S-tilde, U-tilde of the inner 1x2 solve
  Matrix f1e_sharp_dag;
  Matrix xre;
  Matrix bdag11, bdag12, bdag21, bdag22;
  Matrix adag11, adag12, adag21, adag22;
  Matrix result;
};

/// Method `weighted`: weighted pseudoinverse of a fully weighted 2x2
/// partition. Transforms A to the block-diagonally weighted B, inverts B
/// through the Gram pipeline (with the inner 1x2 solve cross-checked
/// against the oracle), and reassembles. Throws NumericalError naming the
/// pipeline stage on any internal validation failure.
Wmp2x2Trace wpinv_2x2(const Partition2x2& p);

}  // namespace wmp
