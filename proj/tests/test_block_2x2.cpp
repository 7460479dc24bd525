#include <doctest.h>

#include "support/testmat.hpp"
#include "wmp/block_2x2.hpp"
#include "wmp/linalg.hpp"
#include "wmp/mp_core.hpp"
#include "wmp/sec5.hpp"

using namespace wmp;
using namespace wmp::testing;

namespace {

Partition2x2 slice(const Matrix& a, Index k1, Index h1,
                   std::optional<Weight> m = std::nullopt,
                   std::optional<Weight> n = std::nullopt) {
  return Partition2x2(a.topLeftCorner(k1, h1),
                      a.topRightCorner(k1, a.cols() - h1),
                      a.bottomLeftCorner(a.rows() - k1, h1),
                      a.bottomRightCorner(a.rows() - k1, a.cols() - h1),
                      std::move(m), std::move(n));
}

/// Blocks satisfying the compatibility conditions by construction:
/// A12 = A11 A11^+ G and A21 = H A11^+ A11.
Partition2x2 compatible_partition(Rng& rng, Index k1, Index k2, Index h1,
                                  Index h2, Index r11) {
  const Matrix a11 = random_with_rank(rng, k1, h1, r11);
  const Matrix a11d = pinv(a11);
  const Matrix a12 = a11 * a11d * random_matrix(rng, k1, h2);
  const Matrix a21 = random_matrix(rng, k2, h1) * a11d * a11;
  const Matrix a22 = random_matrix(rng, k2, h2);
  return Partition2x2(a11, a12, a21, a22);
}

}  // namespace

TEST_CASE("schur complement") {
  Rng rng(113);
  {
    Partition2x2 p(random_matrix(rng, 2, 2), Matrix::Zero(2, 3),
                   random_matrix(rng, 2, 2), random_matrix(rng, 2, 3));
    CHECK(approx_eq(schur_a(p), p.a22, 1e-14));
  }
  {
    const Partition2x2 p(rm({{2}}), rm({{1}}), rm({{1}}), rm({{3}}));
    CHECK(schur_a(p)(0, 0).real() == doctest::Approx(2.5));
  }
  {
    // The Gram blocks of the worked example (the leading block is
    // invertible, so weighted and plain inverses coincide).
    const Partition2x2 p(rm({{4, 0}, {0, 12}}), rm({{1, 0}, {2, 0}}),
                         rm({{4, 4}, {0, 0}}), rm({{4, 0}, {0, 0}}));
    CHECK(max_abs(schur_a(p) - rm({{7.0 / 3, 0}, {0, 0}})) <= 1e-13);
  }
}

TEST_CASE("f_factors") {
  Rng rng(127);
  {
    Partition2x2 p(random_matrix(rng, 2, 2), Matrix::Zero(2, 3),
                   Matrix::Zero(2, 2), random_matrix(rng, 2, 3));
    const auto [f1, f2] = f_factors(p);
    CHECK(approx_eq(f1, vstack(Matrix::Zero(2, 3), Matrix::Identity(3, 3)),
                    1e-14));
    CHECK(approx_eq(f2, hstack(Matrix::Zero(2, 2), Matrix::Identity(2, 2)),
                    1e-14));
  }
  {
    const Partition2x2 p(rm({{4, 0}, {0, 12}}), rm({{1, 0}, {2, 0}}),
                         rm({{4, 4}, {0, 0}}), rm({{4, 0}, {0, 0}}));
    const auto [f1, f2] = f_factors(p);
    CHECK(max_abs(f1 - rm({{-0.25, 0}, {-1.0 / 6, 0}, {1, 0}, {0, 1}})) <=
          1e-13);
  }
  for (int it = 0; it < 5; ++it) {
    const Partition2x2 p(random_matrix(rng, 3, 2), random_matrix(rng, 3, 2),
                         random_matrix(rng, 2, 2), random_matrix(rng, 2, 2));
    const auto [f1, f2] = f_factors(p);
    const Matrix d = pinv(p.a11) * p.a12;
    CHECK(approx_eq(f1.adjoint() * f1,
                    Matrix::Identity(2, 2) + d.adjoint() * d, 1e-11));
    CHECK_NOTHROW(Weight{Matrix(f1.adjoint() * f1)});
    CHECK_NOTHROW(Weight{Matrix(f2 * f2.adjoint())});
  }
}

TEST_CASE("kernel identities of the F-factor pseudoinverses") {
  Rng rng(131);
  for (int it = 0; it < 6; ++it) {
    const Index k1 = 2, k2 = 2, h1 = 3, h2 = 2;
    const Matrix a11 = random_with_rank(rng, k1, h1, 1 + (it % 2));
    const Matrix a12 = random_matrix(rng, k1, h2);
    const Matrix a21 = random_matrix(rng, k2, h1);
    const Partition2x2 p(a11, a12, a21, random_matrix(rng, k2, h2));
    const auto [f1, f2] = f_factors(p);
    const Matrix a11d = pinv(a11);
    const Matrix f1d = (f1.adjoint() * f1).lu().solve(f1.adjoint());
    const Matrix f2d = f2.adjoint() * (f2 * f2.adjoint()).lu()
                                          .solve(Matrix::Identity(k2, k2));

    const Matrix lhs1 =
        f1d * block_2x2(a11d * a11, a11d * a12, Matrix::Zero(h2, h1),
                        Matrix::Zero(h2, h2));
    const Matrix rhs1 =
        f1d - hstack(Matrix::Zero(h2, h1), Matrix::Identity(h2, h2));
    CHECK(rel_diff(lhs1, rhs1) <= 1e-9);

    const Matrix lhs2 =
        block_2x2(a11 * a11d, Matrix::Zero(k1, k2), a21 * a11d,
                  Matrix::Zero(k2, k2)) *
        f2d;
    const Matrix rhs2 =
        f2d - vstack(Matrix::Zero(k1, k2), Matrix::Identity(k2, k2));
    CHECK(rel_diff(lhs2, rhs2) <= 1e-9);
  }
}

TEST_CASE("special method on block-diagonal input") {
  Rng rng(137);
  const Matrix a11 = random_with_rank(rng, 3, 2, 1);
  const Matrix a22 = random_with_rank(rng, 2, 3, 2);
  const Partition2x2 p(a11, Matrix::Zero(3, 3), Matrix::Zero(2, 2), a22);
  CHECK(approx_eq(pinv_2x2_special(p),
                  block_diag(pinv(a11), pinv(a22)), 1e-10));
}

TEST_CASE("special method equals the SVD inverse") {
  Rng rng(139);
  {
    // Invertible leading block: the conditions hold automatically.
    const Matrix a11 = random_with_rank(rng, 3, 3, 3);
    const Partition2x2 p(a11, random_matrix(rng, 3, 2),
                         random_matrix(rng, 2, 3), random_matrix(rng, 2, 2));
    CHECK(approx_eq(pinv_2x2_special(p), pinv(p.assembled()), 1e-9));
  }
  for (int it = 0; it < 10; ++it) {
    const Partition2x2 p = compatible_partition(rng, 3, 2, 3, 2, 2);
    const Matrix x = pinv_2x2_special(p);
    CHECK(approx_eq(x, pinv(p.assembled()), 1e-8));

    // Under the compatibility conditions A F1 and F2 A collapse onto the
    // Schur complement, and the one-sided corrections fix A.
    const auto [f1, f2] = f_factors(p);
    const Matrix a = p.assembled();
    const Matrix s = schur_a(p);
    CHECK(rel_diff(a * f1, vstack(Matrix::Zero(3, 2), s)) <= 1e-9);
    CHECK(rel_diff(f2 * a, hstack(Matrix::Zero(2, 3), s)) <= 1e-9);
  }
}

TEST_CASE("special method rejects incompatible blocks") {
  // A11 = 0 with nonzero A12/A21 violates both conditions maximally.
  const Partition2x2 p(Matrix::Zero(2, 2), Matrix::Identity(2, 2),
                       Matrix::Identity(2, 2), Matrix::Zero(2, 2));
  CHECK_THROWS_AS(pinv_2x2_special(p), PreconditionError);
  try {
    pinv_2x2_special(p);
  } catch (const PreconditionError& e) {
    CHECK(e.residual_12() == doctest::Approx(1.0));
    CHECK(e.residual_21() == doctest::Approx(1.0));
  }
}

TEST_CASE("one-sided corrections preserve the operator") {
  Rng rng(149);
  for (int it = 0; it < 5; ++it) {
    const Partition2x2 p = compatible_partition(rng, 2, 3, 2, 2, 1);
    const Matrix a = p.assembled();
    const Matrix a11d = pinv(p.a11);
    const auto [f1, f2] = f_factors(p);
    const Matrix s = schur_a(p);
    const Weight gram_f1{Matrix(f1.adjoint() * f1)};
    const Weight gram_f2{Matrix(f2 * f2.adjoint())};
    const Weight gram_f2_inv{gram_f2.inverse()};
    const Matrix sg = weighted_pinv_oracle(s, gram_f2_inv, gram_f1);
    const Matrix f1d = gram_f1.solve(f1.adjoint());
    const Matrix f2d = gram_f2.solve(f2).adjoint();
    const Index h = a.cols(), k = a.rows(), h2 = p.h2(), k2 = p.k2();
    const Matrix xl = Matrix::Identity(h, h) -
                      f1 * (Matrix::Identity(h2, h2) - sg * s) * f1d;
    const Matrix xr = Matrix::Identity(k, k) -
                      f2d * (Matrix::Identity(k2, k2) - s * sg) * f2;
    CHECK(rel_diff(a * xl, a) <= 1e-9);
    CHECK(rel_diff(xr * a, a) <= 1e-9);
  }
}

TEST_CASE("positive method") {
  Rng rng(151);
  {
    const Partition2x2 p(Matrix::Identity(2, 2), Matrix::Zero(2, 2),
                         Matrix::Zero(2, 2), Matrix::Identity(2, 2));
    const PositivePinv x = pinv_2x2_positive(p);
    CHECK(approx_eq(x.pinv, Matrix::Identity(4, 4), 1e-12));
    CHECK(approx_eq(x.inv13, Matrix::Identity(4, 4), 1e-12));
  }
  {
    const Partition2x2 p(Matrix::Zero(2, 2), Matrix::Zero(2, 2),
                         Matrix::Zero(2, 2), Matrix::Zero(2, 2));
    const PositivePinv x = pinv_2x2_positive(p);
    CHECK(x.pinv.isZero(0.0));
    CHECK(x.inv13.isZero(0.0));
  }
  for (int it = 0; it < 10; ++it) {
    const Matrix g = random_with_rank(rng, 3, 4, 2);
    const Matrix a = g.adjoint() * g;  // 4x4 PSD of rank 2
    const Partition2x2 p = slice(a, 2, 2);
    const PositivePinv x = pinv_2x2_positive(p);
    CHECK(approx_eq(x.pinv, pinv(a), 1e-8));
    const Inverse13Check c = is_13_inverse(a, x.inv13);
    CHECK(c.ok);

    // Facts forced by positivity: the leading block is PSD, its range
    // covers A12, and the Schur complement is PSD.
    Eigen::SelfAdjointEigenSolver<Matrix> es(p.a11);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);
    CHECK(rel_diff(p.a11 * pinv(p.a11) * p.a12, p.a12) <= 1e-9);
    Eigen::SelfAdjointEigenSolver<Matrix> ess(schur_a(p));
    CHECK(ess.eigenvalues().minCoeff() >= -1e-10);
  }
  CHECK_THROWS_AS(
      pinv_2x2_positive(Partition2x2(rm({{1, 0}, {0, 1}}),
                                     rm({{0, 0}, {0, 0}}),
                                     rm({{1, 0}, {0, 0}}),
                                     rm({{1, 0}, {0, 1}}))),
      ValidationError);
  CHECK_THROWS_AS(
      pinv_2x2_positive(Partition2x2(rm({{-1, 0}, {0, -1}}),
                                     rm({{0, 0}, {0, 0}}),
                                     rm({{0, 0}, {0, 0}}),
                                     rm({{1, 0}, {0, 1}}))),
      ValidationError);
}

TEST_CASE("positive method feeds the product rule") {
  // A (1,3)-inverse of G G* recovers the pseudoinverse of G.
  Rng rng(157);
  const Matrix g = random_with_rank(rng, 4, 5, 2);
  const Matrix e = g * g.adjoint();
  const PositivePinv x = pinv_2x2_positive(slice(e, 2, 2));
  const Matrix gd = pinv_via_13(g, x.inv13);
  CHECK(approx_eq(gd, pinv(g), 1e-8));
  CHECK(verify_penrose(g, gd, Weight::identity(4), Weight::identity(5))
            .max() <= 1e-8);
}

TEST_CASE("general method") {
  Rng rng(163);
  {
    const Matrix a = random_with_rank(rng, 3, 3, 3);
    const Partition2x2 p = slice(a, 1, 2);
    CHECK(approx_eq(pinv_2x2_general(p), a.inverse(), 1e-9));
  }
  for (int it = 0; it < 10; ++it) {
    const Matrix a = random_with_rank(rng, 5, 4, 2);
    const Partition2x2 p = slice(a, 2, 2);
    CHECK(approx_eq(pinv_2x2_general(p), pinv(a), 1e-8));
  }
  {
    // Degenerate leading block.
    const Partition2x2 p(Matrix::Zero(2, 2), random_matrix(rng, 2, 2),
                         random_matrix(rng, 3, 2), random_matrix(rng, 3, 2));
    CHECK(approx_eq(pinv_2x2_general(p), pinv(p.assembled()), 1e-8));
  }
}

TEST_CASE("weighted pipeline with identity weights reduces to general") {
  Rng rng(167);
  const Matrix a = random_with_rank(rng, 5, 5, 3);
  const Partition2x2 p = slice(a, 2, 3, Weight::identity(5),
                               Weight::identity(5));
  const Wmp2x2Trace tr = wpinv_2x2(p);
  CHECK(tr.a_coupling.isZero(1e-14));
  CHECK(tr.b_coupling.isZero(1e-14));
  CHECK(approx_eq(block_2x2(tr.b11, tr.b12, tr.b21, tr.b22), a, 1e-13));
  CHECK(approx_eq(tr.result, pinv_2x2_general(p), 1e-9));
  CHECK(approx_eq(tr.result, pinv(a), 1e-9));
}

TEST_CASE("weighted pipeline reproduces every worked-example value") {
  const Sec5Outcome out = run_sec5(1e-10);
  for (const auto& c : out.checks) {
    INFO(c.name, " differs by ", c.max_abs_diff);
    CHECK(c.pass);
  }
  CHECK(out.all_pass);
}

TEST_CASE("weighted pipeline matches the oracle on random problems") {
  Rng rng(173);
  for (int it = 0; it < 8; ++it) {
    const Index k1 = 1 + static_cast<Index>(rng() % 3);
    const Index k2 = 1 + static_cast<Index>(rng() % 3);
    const Index h1 = 1 + static_cast<Index>(rng() % 3);
    const Index h2 = 1 + static_cast<Index>(rng() % 3);
    const Index r = static_cast<Index>(
        rng() % (std::min(k1 + k2, h1 + h2) + 1));
    const Matrix a = random_with_rank(rng, k1 + k2, h1 + h2, r);
    const Weight m = random_weight(rng, k1 + k2, 20.0);
    const Weight n = random_weight(rng, h1 + h2, 20.0);
    const Partition2x2 p = slice(a, k1, h1, m, n);
    const Wmp2x2Trace tr = wpinv_2x2(p);
    CHECK(approx_eq(tr.result, weighted_pinv_oracle(a, m, n), 1e-8));
    CHECK(verify_penrose(a, tr.result, m, n).max() <= 1e-8);

    // The inner 1x2 solve agrees with the oracle on F1(E)^#.
    const Weight z3{tr.z3};
    CHECK(approx_eq(tr.f1e_sharp_dag,
                    weighted_pinv_oracle(tr.f1e_sharp, p.m->schur, z3),
                    1e-8));
  }
}

TEST_CASE("weighted pipeline requires weights") {
  Rng rng(179);
  const Matrix a = random_matrix(rng, 4, 4);
  CHECK_THROWS_AS(wpinv_2x2(slice(a, 2, 2)), ValidationError);
}
