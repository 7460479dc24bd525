#include "wmp/weight_transform.hpp"

#include "wmp/linalg.hpp"
#include "wmp/mp_core.hpp"

namespace wmp {

namespace {

struct ReweightParts {
  Matrix pinv_n1;  // weighted MP inverse of A under (M, N1)
  Matrix r;
};

ReweightParts reweight_parts(const Matrix& a, const Weight& m,
                             const Weight& n1, const Weight& n2,
                             const Tolerances& tol, Index rank) {
  if (n1.size() != n2.size())
    throw ValidationError("reweight: N1 and N2 must have the same size");
  if (n1.size() != a.cols() || m.size() != a.rows())
    throw ValidationError("reweight: weight sizes do not match the operator");
  ReweightParts parts;
  parts.pinv_n1 = rank < 0 ? weighted_pinv_oracle(a, m, n1, tol.rank_rtol)
                           : weighted_pinv_rank(a, m, n1, rank);
  const Index p = a.cols();
  const Matrix proj = Matrix::Identity(p, p) - parts.pinv_n1 * a;
  parts.r = Matrix::Identity(p, p) + proj * n1.solve(n2.value() - n1.value());
  return parts;
}

}  // namespace

Matrix reweight_operator(const Matrix& a, const Weight& m, const Weight& n1,
                         const Weight& n2, const Tolerances& tol,
                         std::vector<std::string>* warnings, Index rank) {
  ReweightParts parts = reweight_parts(a, m, n1, n2, tol, rank);
  // The inversion is performed only to validate conditioning here.
  invert_checked(parts.r, tol, warnings, "reweight_operator");
  return parts.r;
}

Matrix reweight_pinv(const Matrix& a, const Weight& m, const Weight& n1,
                     const Weight& n2, const Tolerances& tol,
                     std::vector<std::string>* warnings, Index rank) {
  ReweightParts parts = reweight_parts(a, m, n1, n2, tol, rank);
  return invert_checked(parts.r, tol, warnings, "reweight_pinv") *
         parts.pinv_n1;
}

}  // namespace wmp
