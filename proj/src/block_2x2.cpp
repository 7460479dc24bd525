#include "wmp/block_2x2.hpp"

#include <algorithm>

#include "wmp/linalg.hpp"
#include "wmp/mp_core.hpp"

namespace wmp {

namespace {

Weight weight_or_numerical(Matrix value, const Tolerances& tol,
                           const std::string& stage) {
  try {
    return Weight(std::move(value), tol);
  } catch (const ValidationError& e) {
    throw NumericalError(stage + ": " + e.what());
  }
}

}  // namespace

PartitionedWeight::PartitionedWeight(Weight full_, Index d1_,
                                     const Tolerances& tol)
    : full(std::move(full_)),
      d1(d1_),
      block11(Weight::identity(0)),
      schur(Weight::identity(0)) {
  if (d1 < 0 || d1 > full.size())
    throw ValidationError("partitioned weight: block split out of range");
  const Index n2 = full.size() - d1;
  const Matrix& v = full.value();
  block11 = Weight(v.topLeftCorner(d1, d1), tol);
  w12 = v.topRightCorner(d1, n2);
  coupling = block11.solve(w12);
  schur = Weight(v.bottomRightCorner(n2, n2) - w12.adjoint() * coupling, tol);
}

Partition2x2::Partition2x2(Matrix a11_, Matrix a12_, Matrix a21_, Matrix a22_,
                           std::optional<Weight> m_, std::optional<Weight> n_,
                           const Tolerances& tol_)
    : a11(std::move(a11_)),
      a12(std::move(a12_)),
      a21(std::move(a21_)),
      a22(std::move(a22_)),
      tol(tol_) {
  if (a12.rows() != a11.rows() || a21.cols() != a11.cols() ||
      a22.rows() != a21.rows() || a22.cols() != a12.cols())
    throw ValidationError("partition 2x2: block dimensions are not "
                          "conformable");
  require_finite(a11, "partition 2x2: A11");
  require_finite(a12, "partition 2x2: A12");
  require_finite(a21, "partition 2x2: A21");
  require_finite(a22, "partition 2x2: A22");
  if (m_.has_value()) {
    if (m_->size() != k1() + k2())
      throw ValidationError("partition 2x2: M must have size k1 + k2");
    m.emplace(std::move(*m_), k1(), tol);
  }
  if (n_.has_value()) {
    if (n_->size() != h1() + h2())
      throw ValidationError("partition 2x2: N must have size h1 + h2");
    n.emplace(std::move(*n_), h1(), tol);
  }
}

Matrix Partition2x2::assembled() const {
  return block_2x2(a11, a12, a21, a22);
}

Matrix schur_a(const Partition2x2& p) {
  return p.a22 - p.a21 * pinv(p.a11, p.tol.rank_rtol) * p.a12;
}

std::pair<Matrix, Matrix> f_factors(const Partition2x2& p) {
  const Matrix a11d = pinv(p.a11, p.tol.rank_rtol);
  return {vstack(-a11d * p.a12, Matrix::Identity(p.h2(), p.h2())),
          hstack(-p.a21 * a11d, Matrix::Identity(p.k2(), p.k2()))};
}

PreconditionError::PreconditionError(double r12, double r21)
    : NumericalError("special: compatibility conditions violated "
                     "((I - A11 A11^+) A12 residual " +
                     std::to_string(r12) + ", A21 (I - A11^+ A11) residual " +
                     std::to_string(r21) + ")"),
      r12_(r12),
      r21_(r21) {}

Matrix pinv_2x2_special(const Partition2x2& p) {
  const Matrix assembled = p.assembled();
  const double floor =
      effective_rank_rtol(assembled, p.tol.rank_rtol) * assembled.norm();
  const Index rank_a11 = numerical_rank(p.a11, p.tol.rank_rtol, floor);
  const Matrix a11d = pinv_rank(p.a11, rank_a11);
  const Matrix left_proj =
      Matrix::Identity(p.k1(), p.k1()) - p.a11 * a11d;
  const Matrix right_proj =
      Matrix::Identity(p.h1(), p.h1()) - a11d * p.a11;
  const double r12 = rel_residual(left_proj * p.a12, p.a12, p.tol.pd_tol);
  const double r21 = rel_residual(p.a21 * right_proj, p.a21, p.tol.pd_tol);
  if (r12 > p.tol.num_tol || r21 > p.tol.num_tol)
    throw PreconditionError(r12, r21);

  const Matrix f1 = vstack(-a11d * p.a12, Matrix::Identity(p.h2(), p.h2()));
  const Matrix f2 = hstack(-p.a21 * a11d, Matrix::Identity(p.k2(), p.k2()));
  const Matrix s = p.a22 - p.a21 * a11d * p.a12;
  // Under the compatibility conditions ranks are additive across the
  // partition, which pins the rank of the Schur complement exactly.
  const Index rank_s = std::max<Index>(
      numerical_rank(assembled, p.tol.rank_rtol, floor) - rank_a11, 0);

  const Weight gram_f1 =
      weight_or_numerical(f1.adjoint() * f1, p.tol, "special: F1*F1");
  const Weight gram_f2 =
      weight_or_numerical(f2 * f2.adjoint(), p.tol, "special: F2F2*");
  const Weight gram_f2_inv =
      weight_or_numerical(gram_f2.inverse(), p.tol, "special: (F2F2*)^{-1}");
  const Matrix sg = weighted_pinv_rank(s, gram_f2_inv, gram_f1, rank_s);

  const Matrix f1d = gram_f1.solve(f1.adjoint());          // (F1*F1)^{-1} F1*
  const Matrix f2d = gram_f2.solve(f2).adjoint();          // F2* (F2F2*)^{-1}
  const Index h = p.h1() + p.h2();
  const Index k = p.k1() + p.k2();
  const Matrix xl =
      Matrix::Identity(h, h) -
      f1 * (Matrix::Identity(p.h2(), p.h2()) - sg * s) * f1d;
  const Matrix xr =
      Matrix::Identity(k, k) -
      f2d * (Matrix::Identity(p.k2(), p.k2()) - s * sg) * f2;
  return xl * embed_top_left(a11d, h, k) * xr + f1 * sg * f2;
}

PositivePinv pinv_2x2_positive(const Partition2x2& p) {
  const Matrix a = p.assembled();
  if (a.rows() != a.cols() ||
      rel_residual(a - a.adjoint(), a, p.tol.pd_tol) > p.tol.herm_tol)
    throw ValidationError("positive: assembled matrix is not Hermitian");
  if (a.rows() > 0) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    if (es.info() != Eigen::Success)
      throw NumericalError("positive: eigendecomposition did not converge");
    if (es.eigenvalues().minCoeff() < -p.tol.pd_tol)
      throw ValidationError("positive: assembled matrix is not positive "
                            "semidefinite");
  }

  const double floor = effective_rank_rtol(a, p.tol.rank_rtol) * a.norm();
  const Index rank_a11 = numerical_rank(p.a11, p.tol.rank_rtol, floor);
  const Matrix a11d = pinv_rank(p.a11, rank_a11);
  const Matrix f1 = vstack(-a11d * p.a12, Matrix::Identity(p.h2(), p.h2()));
  const Matrix s = p.a22 - p.a21 * a11d * p.a12;
  const Index rank_s = std::max<Index>(
      numerical_rank(a, p.tol.rank_rtol, floor) - rank_a11, 0);

  const Weight gram =
      weight_or_numerical(f1.adjoint() * f1, p.tol, "positive: F1*F1");
  const Weight gram_inv =
      weight_or_numerical(gram.inverse(), p.tol, "positive: (F1*F1)^{-1}");
  const Matrix sg = weighted_pinv_rank(s, gram_inv, gram, rank_s);

  const Matrix f1d = gram.solve(f1.adjoint());
  const Matrix f1sd = f1d.adjoint();  // (F1*)^+ = F1 (F1*F1)^{-1}
  const Index k = a.rows();
  const Matrix xr =
      Matrix::Identity(k, k) -
      f1sd * (Matrix::Identity(p.k2(), p.k2()) - s * sg) * f1.adjoint();
  const Matrix xl =
      Matrix::Identity(k, k) -
      f1 * (Matrix::Identity(p.h2(), p.h2()) - sg * s) * f1d;
  const Matrix mid = embed_top_left(a11d, k, k) * xr;
  const Matrix tail = f1 * sg * f1.adjoint();
  return {xl * mid + tail, mid + tail};
}

Matrix pinv_2x2_general(const Partition2x2& p) {
  const Matrix a = p.assembled();
  const Index k1 = p.k1();
  const Index k2 = p.k2();
  const Matrix e = a * a.adjoint();
  const Matrix e11 = e.topLeftCorner(k1, k1);
  const Matrix e12 = e.topRightCorner(k1, k2);
  const Matrix e22 = e.bottomRightCorner(k2, k2);
  // rank(E11) equals the rank of the top row block of A, and the Schur
  // complement of the Gram operator accounts for the remaining rank of A.
  const double floor = effective_rank_rtol(a, p.tol.rank_rtol) * a.norm();
  const Index rank_e11 =
      numerical_rank(hstack(p.a11, p.a12), p.tol.rank_rtol, floor);
  const Index rank_se = std::max<Index>(
      numerical_rank(a, p.tol.rank_rtol, floor) - rank_e11, 0);
  const Matrix e11d = pinv_rank(e11, rank_e11);
  const Matrix f1e = vstack(-e11d * e12, Matrix::Identity(k2, k2));
  const Matrix se = e22 - e12.adjoint() * e11d * e12;

  const Weight gram =
      weight_or_numerical(f1e.adjoint() * f1e, p.tol, "general: F1(E)*F1(E)");
  const Weight gram_inv = weight_or_numerical(gram.inverse(), p.tol,
                                              "general: (F1(E)*F1(E))^{-1}");
  const Matrix seg = weighted_pinv_rank(se, gram_inv, gram, rank_se);
  const Matrix f1sd = gram.solve(f1e.adjoint()).adjoint();
  const Index k = k1 + k2;
  const Matrix xre =
      Matrix::Identity(k, k) -
      f1sd * (Matrix::Identity(k2, k2) - se * seg) * f1e.adjoint();
  return a.adjoint() *
         (embed_top_left(e11d, k, k) * xre + f1e * seg * f1e.adjoint());
}

Wmp2x2Trace wpinv_2x2(const Partition2x2& p) {
  if (!p.m.has_value() || !p.n.has_value())
    throw ValidationError("weighted: both weights M and N are required");
  const PartitionedWeight& mw = *p.m;
  const PartitionedWeight& nw = *p.n;
  const Index k1 = p.k1(), k2 = p.k2(), h1 = p.h1(), h2 = p.h2();
  const Index k = k1 + k2, h = h1 + h2;
  Wmp2x2Trace tr;

  tr.a_coupling = nw.coupling;
  tr.b_coupling = mw.coupling;
  const Matrix& ac = tr.a_coupling;
  const Matrix& bc = tr.b_coupling;

  tr.b11 = p.a11 + bc * p.a21;
  tr.b12 = p.a12 + bc * p.a22 - p.a11 * ac - bc * (p.a21 * ac);
  tr.b21 = p.a21;
  tr.b22 = p.a22 - p.a21 * ac;
  const Matrix b = block_2x2(tr.b11, tr.b12, tr.b21, tr.b22);

  // Block-diagonal weights of the transformed problem.
  tr.z3 = block_diag(mw.block11.value(), mw.schur.value());
  const Weight z3w = weight_or_numerical(tr.z3, p.tol, "stage Z3");
  const Weight nbw = weight_or_numerical(
      block_diag(nw.block11.value(), nw.schur.value()), p.tol,
      "stage diag(N11, S(N))");

  tr.b_sharp = nbw.solve(b.adjoint() * tr.z3);
  const Matrix e = b * tr.b_sharp;
  tr.e11 = e.topLeftCorner(k1, k1);
  tr.e12 = e.topRightCorner(k1, k2);
  tr.e21 = e.bottomLeftCorner(k2, k1);
  tr.e22 = e.bottomRightCorner(k2, k2);

  // The transformation to B and the Gram step preserve rank, so the ranks
  // of E, E11 and S(E) are determined by A, the top row block of B, and
  // their difference.
  const Matrix assembled = p.assembled();
  const double floor_a =
      effective_rank_rtol(assembled, p.tol.rank_rtol) * assembled.norm();
  const Index rank_e = numerical_rank(assembled, p.tol.rank_rtol, floor_a);
  const double floor_b = effective_rank_rtol(b, p.tol.rank_rtol) * b.norm();
  const Index rank_e11 =
      numerical_rank(hstack(tr.b11, tr.b12), p.tol.rank_rtol, floor_b);
  const Index rank_se = std::max<Index>(rank_e - rank_e11, 0);

  tr.e11_dag = weighted_pinv_rank(tr.e11, mw.block11, mw.block11, rank_e11);
  tr.f1e = vstack(-tr.e11_dag * tr.e12, Matrix::Identity(k2, k2));
  tr.f1e_sharp = mw.schur.solve(tr.f1e.adjoint() * tr.z3);
  tr.se = tr.e22 - tr.e21 * (tr.e11_dag * tr.e12);

  tr.f1e_gram = tr.f1e_sharp * tr.f1e;
  tr.z1 = mw.schur.value() * tr.f1e_gram;
  tr.z2 = mw.schur.value() *
          invert_checked(tr.f1e_gram, p.tol, nullptr, "stage F1(E)^#F1(E)");
  const Weight z1w = weight_or_numerical(tr.z1, p.tol, "stage Z1");
  const Weight z2w = weight_or_numerical(tr.z2, p.tol, "stage Z2");
  tr.se_g = weighted_pinv_rank(tr.se, z2w, z1w, rank_se);

  // Inner 1x2 solve for the weighted pseudoinverse of F1(E)^# = (T, I).
  tr.t = tr.f1e_sharp.leftCols(k1);
  try {
    const Partition1x2 sub(tr.t, Matrix::Identity(k2, k2), mw.schur,
                           mw.block11, Matrix::Zero(k1, k2),
                           mw.schur.value(), p.tol);
    tr.f1e_sharp_dag = wpinv_1x2_thm33(sub, &tr.sub).stacked();
  } catch (const ValidationError& e) {
    throw NumericalError(std::string("stage F1(E)^# 1x2 solve: ") + e.what());
  }
  const Matrix cross =
      weighted_pinv_oracle(tr.f1e_sharp, mw.schur, z3w, p.tol.rank_rtol);
  if (rel_diff(tr.f1e_sharp_dag, cross, p.tol.pd_tol) > p.tol.cmp_tol)
    throw NumericalError("stage F1(E)^# 1x2 solve: disagrees with the "
                         "oracle beyond cmp_tol");

  tr.xre = Matrix::Identity(k, k) -
           tr.f1e_sharp_dag * (Matrix::Identity(k2, k2) - tr.se * tr.se_g) *
               tr.f1e_sharp;
  const Matrix bdag =
      tr.b_sharp * (embed_top_left(tr.e11_dag, k, k) * tr.xre +
                    tr.f1e * tr.se_g * tr.f1e_sharp);
  tr.bdag11 = bdag.topLeftCorner(h1, k1);
  tr.bdag12 = bdag.topRightCorner(h1, k2);
  tr.bdag21 = bdag.bottomLeftCorner(h2, k1);
  tr.bdag22 = bdag.bottomRightCorner(h2, k2);

  tr.adag11 = tr.bdag11 - ac * tr.bdag21;
  tr.adag12 = tr.bdag11 * bc + tr.bdag12 - ac * (tr.bdag21 * bc) -
              ac * tr.bdag22;
  tr.adag21 = tr.bdag21;
  tr.adag22 = tr.bdag21 * bc + tr.bdag22;
  tr.result = block_2x2(tr.adag11, tr.adag12, tr.adag21, tr.adag22);
  return tr;
}

}  // namespace wmp
