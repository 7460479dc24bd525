#include <doctest.h>

#include "support/testmat.hpp"
#include "wmp/linalg.hpp"
#include "wmp/mp_core.hpp"
#include "wmp/weight_transform.hpp"

using namespace wmp;
using namespace wmp::testing;

TEST_CASE("reweight operator trivial cases") {
  Rng rng(61);
  const Matrix a = random_with_rank(rng, 4, 3, 2);
  const Weight m = random_weight(rng, 4);
  const Weight n = random_weight(rng, 3);
  CHECK(approx_eq(reweight_operator(a, m, n, n), Matrix::Identity(3, 3),
                  1e-10));

  // Invertible operator: the projector term vanishes.
  const Matrix inv = random_with_rank(rng, 3, 3, 3);
  const Weight n2 = random_weight(rng, 3);
  CHECK(approx_eq(reweight_operator(inv, Weight::identity(3), n, n2),
                  Matrix::Identity(3, 3), 1e-10));
}

TEST_CASE("reweight operator on a rank-deficient diagonal") {
  const Matrix a = rm({{1, 0}, {0, 0}});
  const Weight m = Weight::identity(2);
  const Weight n1 = Weight::identity(2);
  const Weight n2(rm({{1, 0}, {0, 4}}));
  const Matrix r = reweight_operator(a, m, n1, n2);
  // X under (I, N1) is pinv(a); the correction acts on the kernel only.
  CHECK(approx_eq(r, rm({{1, 0}, {0, 4}}), 1e-12));
  CHECK(approx_eq(reweight_pinv(a, m, n1, n2),
                  weighted_pinv_oracle(a, m, n2), 1e-10));
}

TEST_CASE("reweight_pinv equals the oracle under the new weight") {
  Rng rng(67);
  for (int it = 0; it < 20; ++it) {
    const Index mdim = 2 + static_cast<Index>(rng() % 5);
    const Index n = 2 + static_cast<Index>(rng() % 4);
    const Index r = static_cast<Index>(rng() % (std::min(mdim, n) + 1));
    const Matrix a = random_with_rank(rng, mdim, n, r);
    const Weight m = random_weight(rng, mdim, 30.0);
    const Weight n1 = random_weight(rng, n, 30.0);
    const Weight n2 = random_weight(rng, n, 30.0);
    CHECK(approx_eq(reweight_pinv(a, m, n1, n2),
                    weighted_pinv_oracle(a, m, n2), 1e-8));
  }
}

TEST_CASE("reweight_pinv of the zero operator") {
  Rng rng(71);
  const Weight m = random_weight(rng, 3);
  const Weight n1 = random_weight(rng, 4);
  const Weight n2 = random_weight(rng, 4);
  CHECK(reweight_pinv(Matrix::Zero(3, 4), m, n1, n2).isZero(1e-14));
  CHECK(approx_eq(reweight_pinv(rm({{1, 0}, {0, 0}}), Weight::identity(2),
                                Weight::identity(2), Weight::identity(2)),
                  rm({{1, 0}, {0, 0}}), 1e-12));
}

TEST_CASE("two-sided projector identity") {
  Rng rng(73);
  for (int it = 0; it < 10; ++it) {
    const Index mdim = 3 + static_cast<Index>(rng() % 3);
    const Index n = 3 + static_cast<Index>(rng() % 3);
    const Matrix a = random_with_rank(rng, mdim, n, 2);
    const Weight m = random_weight(rng, mdim);
    const Weight n1 = random_weight(rng, n);
    const Weight n2 = random_weight(rng, n);
    const Matrix x1 = weighted_pinv_oracle(a, m, n1);
    const Matrix x2 = weighted_pinv_oracle(a, m, n2);
    const Matrix r = reweight_operator(a, m, n1, n2);
    const Matrix id = Matrix::Identity(n, n);
    const Matrix lhs = (id - x2 * a) * n2.inverse();
    const Matrix rhs = invert_checked(r, Tolerances{}, nullptr, "test") *
                       ((id - x1 * a) * n1.inverse());
    CHECK(rel_diff(lhs, rhs) <= 1e-8);
  }
}

TEST_CASE("reweighting composes") {
  Rng rng(79);
  const Matrix a = random_with_rank(rng, 5, 4, 2);
  const Weight m = random_weight(rng, 5);
  const Weight n1 = random_weight(rng, 4);
  const Weight n2 = random_weight(rng, 4);
  const Weight n3 = random_weight(rng, 4);
  const Matrix via_n2 =
      invert_checked(reweight_operator(a, m, n2, n3), Tolerances{}, nullptr,
                     "test") *
      reweight_pinv(a, m, n1, n2);
  CHECK(approx_eq(via_n2, reweight_pinv(a, m, n1, n3), 1e-8));
}
