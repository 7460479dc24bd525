#include "wmp/block_1x2.hpp"

#include <algorithm>

#include "wmp/linalg.hpp"
#include "wmp/mp_core.hpp"
#include "wmp/weight_transform.hpp"

namespace wmp {

namespace {

Weight weight_or_numerical(Matrix value, const Tolerances& tol,
                           const std::string& context) {
  try {
    return Weight(std::move(value), tol);
  } catch (const ValidationError& e) {
    throw NumericalError(context + ": " + e.what());
  }
}

// Quantities shared by every representation. Rank decisions are made once,
// on the assembled operator: the complement C is produced by a projector
// and may consist of pure rounding noise when A already spans the target,
// but its exact rank is rank(A, B) - rank(A), so its pseudoinverses are
// taken at that rank.
struct Core {
  Matrix ad;        // weighted MP inverse of A under (M, N1)
  Matrix c;         // (I - A ad) B
  Index rank_c = 0;
  Matrix proj;      // I - ad A
  Matrix n1inv_l;   // N1^{-1} L
};

Core make_core(const Partition1x2& p) {
  const Matrix ab = p.ab();
  const double floor =
      effective_rank_rtol(ab, p.tol.rank_rtol) * ab.norm();
  const Index rank_a = numerical_rank(p.a, p.tol.rank_rtol, floor);
  Core k;
  k.ad = weighted_pinv_rank(p.a, p.m, p.n1, rank_a);
  k.c = (Matrix::Identity(p.rows(), p.rows()) - p.a * k.ad) * p.b;
  k.rank_c = std::max<Index>(
      numerical_rank(ab, p.tol.rank_rtol, floor) - rank_a, 0);
  k.proj = Matrix::Identity(p.p(), p.p()) - k.ad * p.a;
  k.n1inv_l = p.n1.solve(p.l);
  return k;
}

Matrix s_tilde_of(const Partition1x2& p, const Core& k, const Matrix& d) {
  return p.n2 - p.l.adjoint() * (k.proj * k.n1inv_l) +
         d.adjoint() * p.n1.value() * d - d.adjoint() * p.l -
         p.l.adjoint() * d;
}

}  // namespace

Partition1x2::Partition1x2(Matrix a_, Matrix b_, Weight m_, Weight n1_,
                           Matrix l_, Matrix n2_, const Tolerances& tol_)
    : a(std::move(a_)),
      b(std::move(b_)),
      m(std::move(m_)),
      n1(std::move(n1_)),
      l(std::move(l_)),
      n2(std::move(n2_)),
      n(Weight::identity(0)),
      schur_n(Weight::identity(0)),
      tol(tol_) {
  if (a.rows() != b.rows())
    throw ValidationError("partition 1x2: A and B must have the same number "
                          "of rows");
  if (m.size() != a.rows())
    throw ValidationError("partition 1x2: M must match the row space");
  if (n1.size() != a.cols())
    throw ValidationError("partition 1x2: N1 must match the columns of A");
  if (l.rows() != a.cols() || l.cols() != b.cols())
    throw ValidationError("partition 1x2: L must be p x q");
  if (n2.rows() != b.cols() || n2.cols() != b.cols())
    throw ValidationError("partition 1x2: N2 must be q x q");
  require_finite(a, "partition 1x2: A");
  require_finite(b, "partition 1x2: B");
  require_finite(l, "partition 1x2: L");
  n = Weight(block_2x2(n1.value(), l, l.adjoint(), n2), tol);
  schur_n = Weight(n2 - l.adjoint() * n1.solve(l), tol);
}

Matrix Partition1x2::ab() const { return hstack(a, b); }

Matrix Stacked1x2::stacked() const { return vstack(x1, x2); }

Matrix complement_c(const Partition1x2& p) { return make_core(p).c; }

Stacked1x2 wpinv_1x2_thm32(const Partition1x2& p) {
  const Core k = make_core(p);
  const Weight s = weight_or_numerical(
      p.n2 - p.l.adjoint() * (k.proj * k.n1inv_l), p.tol, "thm32: S");
  const Matrix cd = weighted_pinv_rank(k.c, p.m, s, k.rank_c);
  const Matrix u =
      cd - (Matrix::Identity(p.q(), p.q()) - cd * k.c) *
               s.solve(p.l.adjoint() * k.ad);
  return {k.ad - k.proj * k.n1inv_l * u, u};
}

Stacked1x2 wpinv_1x2_thm33(const Partition1x2& p, Thm33Intermediates* inter) {
  const Core k = make_core(p);
  const Matrix d = k.ad * p.b;
  const Matrix s_tilde_value = s_tilde_of(p, k, d);
  const Weight s_tilde =
      weight_or_numerical(s_tilde_value, p.tol, "thm33: S-tilde");
  const Matrix cd = weighted_pinv_rank(k.c, p.m, s_tilde, k.rank_c);
  const Matrix u =
      cd + (Matrix::Identity(p.q(), p.q()) - cd * k.c) *
               s_tilde.solve(
                   (d.adjoint() * p.n1.value() - p.l.adjoint()) * k.ad);
  if (inter != nullptr) *inter = {k.c, d, s_tilde_value, u};
  return {k.ad - (d + k.proj * k.n1inv_l) * u, u};
}

Stacked1x2 wpinv_1x2_unified(const Partition1x2& p, const Weight& n3) {
  if (n3.size() != p.q())
    throw ValidationError("unified: N3 must be q x q");
  const Core k = make_core(p);
  const Matrix d = k.ad * p.b;
  const Weight s_tilde =
      weight_or_numerical(s_tilde_of(p, k, d), p.tol, "unified: S-tilde");
  const Matrix r = reweight_operator(k.c, p.m, n3, s_tilde, p.tol, nullptr,
                                     k.rank_c);
  const Matrix cd3 = weighted_pinv_rank(k.c, p.m, n3, k.rank_c);
  const Matrix proj_c = Matrix::Identity(p.q(), p.q()) - cd3 * k.c;
  const Matrix v =
      invert_checked(r, p.tol, nullptr, "unified: R") *
      (cd3 + proj_c * n3.solve(
                 (d.adjoint() * p.n1.value() - p.l.adjoint()) * k.ad));
  return {k.ad - (d + k.proj * k.n1inv_l) * v, v};
}

Stacked1x2 wpinv_1x2_unified(const Partition1x2& p) {
  return wpinv_1x2_unified(p, p.schur_n);
}

Stacked1x2 wpinv_1x2_xu(const Partition1x2& p) {
  const Core k = make_core(p);
  const Matrix d = k.ad * p.b;
  const Matrix sigma = k.ad * (p.b - p.a * k.n1inv_l);
  const Matrix cd = weighted_pinv_rank(k.c, p.m, p.schur_n, k.rank_c);
  const Matrix y = (Matrix::Identity(p.q(), p.q()) - cd * k.c) *
                   p.schur_n.inverse();
  const Matrix gram = sigma.adjoint() * p.n1.value() * sigma;
  // Consistency gate: Sigma* N1 Sigma must equal S-tilde - S(N). The
  // difference is pure rounding, so it is measured against the magnitude
  // of the terms that cancel.
  const Matrix t1 = d.adjoint() * p.n1.value() * d;
  const Matrix t2 = d.adjoint() * p.l;
  const Matrix t3 = p.l.adjoint() * (k.ad * p.a) * k.n1inv_l;
  const Matrix delta = t1 - t2 - t2.adjoint() + t3;
  const double ref =
      t1.norm() + 2.0 * t2.norm() + t3.norm() + gram.norm();
  if ((gram - delta).norm() > p.tol.num_tol * std::max(ref, p.tol.pd_tol))
    throw NumericalError("xu: Sigma* N1 Sigma deviates from the coupling "
                         "shift; input is numerically inconsistent");
  const Matrix core = Matrix::Identity(p.q(), p.q()) + y * gram;
  const Matrix omega =
      invert_checked(core, p.tol, nullptr, "xu: I + Y Sigma* N1 Sigma") *
      (y * sigma.adjoint() * p.n1.value() * k.ad + cd);
  return {k.ad - (sigma + k.n1inv_l) * omega, omega};
}

Stacked1x2 wpinv_1x2_via_thm32(const Partition1x2& p) {
  const Core k = make_core(p);
  const Matrix d = k.ad * p.b;
  // Congruence by T = [[I, -D], [0, I]] turns (A, B) into (A, C) and N into
  // [[N1, L - N1 D], [., N2 - D*L - L*D + D*N1 D]].
  const Matrix l_t = p.l - p.n1.value() * d;
  const Matrix n2_t = p.n2 - d.adjoint() * p.l - p.l.adjoint() * d +
                      d.adjoint() * p.n1.value() * d;
  try {
    const Partition1x2 transformed(p.a, k.c, p.m, p.n1, l_t, n2_t, p.tol);
    const Stacked1x2 ac = wpinv_1x2_thm32(transformed);
    return {ac.x1 - d * ac.x2, ac.x2};
  } catch (const ValidationError& e) {
    // The congruence preserves positive definiteness, so a validation
    // failure here is a numerical breakdown, not bad input.
    throw NumericalError(std::string("via_thm32: ") + e.what());
  }
}

}  // namespace wmp
