#include "wmp/mp_core.hpp"

#include <algorithm>

#include "wmp/linalg.hpp"

namespace wmp {

namespace {

void check_weight_dims(const Matrix& a, const Weight& m, const Weight& n,
                       const std::string& context) {
  if (m.size() != a.rows())
    throw ValidationError(context + ": output-side weight has size " +
                          std::to_string(m.size()) + ", expected " +
                          std::to_string(a.rows()));
  if (n.size() != a.cols())
    throw ValidationError(context + ": input-side weight has size " +
                          std::to_string(n.size()) + ", expected " +
                          std::to_string(a.cols()));
}

}  // namespace

double PenroseResiduals::max() const {
  return std::max(std::max(r1, r2), std::max(r3, r4));
}

Matrix weighted_adjoint(const Matrix& t, const Weight& m, const Weight& n) {
  check_weight_dims(t, m, n, "weighted_adjoint");
  return n.solve(t.adjoint() * m.value());
}

Matrix weighted_pinv_oracle(const Matrix& a, const Weight& m, const Weight& n,
                            double rank_rtol) {
  check_weight_dims(a, m, n, "weighted_pinv_oracle");
  return n.sqrt_inverse() * pinv(m.sqrt() * a * n.sqrt_inverse(), rank_rtol) *
         m.sqrt();
}

Matrix weighted_pinv_rank(const Matrix& a, const Weight& m, const Weight& n,
                          Index rank) {
  check_weight_dims(a, m, n, "weighted_pinv_rank");
  return n.sqrt_inverse() *
         pinv_rank(m.sqrt() * a * n.sqrt_inverse(), rank) * m.sqrt();
}

PenroseResiduals verify_penrose(const Matrix& a, const Matrix& x,
                                const Weight& m, const Weight& n,
                                double pd_tol) {
  if (x.rows() != a.cols() || x.cols() != a.rows())
    throw ValidationError("verify_penrose: candidate has shape " +
                          std::to_string(x.rows()) + "x" +
                          std::to_string(x.cols()) + ", expected " +
                          std::to_string(a.cols()) + "x" +
                          std::to_string(a.rows()));
  check_weight_dims(a, m, n, "verify_penrose");
  const Matrix ax = a * x;
  const Matrix xa = x * a;
  const Matrix max = m.value() * ax;
  const Matrix nxa = n.value() * xa;
  PenroseResiduals r;
  r.r1 = rel_residual(ax * a - a, a, pd_tol);
  r.r2 = rel_residual(xa * x - x, x, pd_tol);
  r.r3 = rel_residual(max - max.adjoint(), max, pd_tol);
  r.r4 = rel_residual(nxa - nxa.adjoint(), nxa, pd_tol);
  return r;
}

Inverse13Check is_13_inverse(const Matrix& a, const Matrix& x,
                             const Tolerances& tol) {
  if (x.rows() != a.cols() || x.cols() != a.rows())
    throw ValidationError("is_13_inverse: candidate has shape " +
                          std::to_string(x.rows()) + "x" +
                          std::to_string(x.cols()) + ", expected " +
                          std::to_string(a.cols()) + "x" +
                          std::to_string(a.rows()));
  const Matrix ax = a * x;
  Inverse13Check c;
  c.r1 = rel_residual(ax * a - a, a, tol.pd_tol);
  c.r3 = rel_residual(ax - ax.adjoint(), ax, tol.pd_tol);
  c.ok = c.r1 <= tol.num_tol && c.r3 <= tol.num_tol;
  return c;
}

Matrix pinv_via_13(const Matrix& a, const Matrix& x13, const Tolerances& tol) {
  const Matrix gram = a * a.adjoint();
  const Inverse13Check c = is_13_inverse(gram, x13, tol);
  if (!c.ok)
    throw ValidationError(
        "pinv_via_13: candidate is not a (1,3)-inverse of A*A^H (residuals " +
        std::to_string(c.r1) + ", " + std::to_string(c.r3) + ")");
  return a.adjoint() * x13;
}

bool characterization_check(const Matrix& a, const Matrix& x, const Weight& m,
                            const Weight& n, const Tolerances& tol) {
  check_weight_dims(a, m, n, "characterization_check");
  if (x.rows() != a.cols() || x.cols() != a.rows())
    throw ValidationError("characterization_check: candidate shape mismatch");
  const Matrix am = a.adjoint() * m.value();
  const double normal_eq = rel_residual(am * (a * x) - am, am, tol.pd_tol);
  // Range condition R(NX) within R(A*): the orthogonal projector onto the
  // complement of R(A*) must annihilate N X.
  const Matrix proj =
      Matrix::Identity(a.cols(), a.cols()) - pinv(a, tol.rank_rtol) * a;
  const Matrix nx = n.value() * x;
  const double range_cond = rel_residual(proj * nx, nx, tol.pd_tol);
  return normal_eq <= tol.num_tol && range_cond <= tol.num_tol;
}

}  // namespace wmp
