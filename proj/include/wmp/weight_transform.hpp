#pragma once

#include <vector>

#include "wmp/types.hpp"
#include "wmp/weight.hpp"

namespace wmp {

/// R = I + (I - X A) N1^{-1} (N2 - N1) with X the weighted Moore-Penrose
/// inverse of A under weights (M, N1). Invertible whenever the weights are
/// valid; a condition estimate beyond tol.cond_fail therefore flags corrupt
/// input and raises NumericalError. `rank` fixes the rank used for X when
/// nonnegative (callers that know the exact rank of a derived operator);
/// the default applies the relative singular-value cutoff.
Matrix reweight_operator(const Matrix& a, const Weight& m, const Weight& n1,
                         const Weight& n2, const Tolerances& tol = {},
                         std::vector<std::string>* warnings = nullptr,
                         Index rank = -1);

/// R^{-1} times the (M, N1) weighted Moore-Penrose inverse of A, which
/// equals the (M, N2) weighted Moore-Penrose inverse.
Matrix reweight_pinv(const Matrix& a, const Weight& m, const Weight& n1,
                     const Weight& n2, const Tolerances& tol = {},
                     std::vector<std::string>* warnings = nullptr,
                     Index rank = -1);

}  // namespace wmp
