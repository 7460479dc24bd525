#include <doctest.h>

#include "support/testmat.hpp"
#include "wmp/linalg.hpp"
#include "wmp/weight.hpp"

using namespace wmp;
using namespace wmp::testing;

namespace {

// Independent oracle for rank-one matrices: for A = x y*, the
// Moore-Penrose inverse is y x* / (|x|^2 |y|^2).
Matrix rank_one_pinv(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) {
  return y * x.adjoint() / (x.squaredNorm() * y.squaredNorm());
}

void check_penrose_unweighted(const Matrix& a, const Matrix& x,
                              double tol = 1e-10) {
  const Matrix ax = a * x;
  const Matrix xa = x * a;
  CHECK(rel_residual(ax * a - a, a) <= tol);
  CHECK(rel_residual(xa * x - x, x) <= tol);
  CHECK(rel_residual(ax - ax.adjoint(), ax) <= tol);
  CHECK(rel_residual(xa - xa.adjoint(), xa) <= tol);
}

}  // namespace

TEST_CASE("adjoint") {
  CHECK(approx_eq(adjoint(Matrix::Identity(2, 2)), Matrix::Identity(2, 2),
                  1e-15));
  CHECK(approx_eq(adjoint(rm({{0, 1}, {0, 0}})), rm({{0, 0}, {1, 0}}),
                  1e-15));
  Matrix imag1(1, 1);
  imag1(0, 0) = Complex(0, 1);
  CHECK(adjoint(imag1)(0, 0) == Complex(0, -1));

  Rng rng(7);
  const Matrix a = random_matrix(rng, 4, 3);
  CHECK(adjoint(adjoint(a)) == a);
}

TEST_CASE("pinv basics") {
  CHECK(approx_eq(pinv(Matrix::Identity(3, 3)), Matrix::Identity(3, 3),
                  1e-14));
  CHECK(pinv(Matrix::Zero(2, 3)).isZero(0.0));
  CHECK(pinv(Matrix::Zero(2, 3)).rows() == 3);
  CHECK(pinv(Matrix::Zero(2, 3)).cols() == 2);
}

TEST_CASE("pinv rank-one oracle") {
  Eigen::VectorXcd x(2), y(2);
  x << 1.0, 2.0;
  y << 1.0, 2.0;
  const Matrix a = x * y.adjoint();  // [[1,2],[2,4]]
  CHECK(approx_eq(a, rm({{1, 2}, {2, 4}}), 1e-15));
  const Matrix expected = rank_one_pinv(x, y);
  CHECK(approx_eq(expected, rm({{1, 2}, {2, 4}}) / 25.0, 1e-14));
  CHECK(approx_eq(pinv(a), expected, 1e-12));
  check_penrose_unweighted(a, expected, 1e-12);

  Rng rng(11);
  const Eigen::VectorXcd u = random_matrix(rng, 5, 1).col(0);
  const Eigen::VectorXcd v = random_matrix(rng, 3, 1).col(0);
  CHECK(approx_eq(pinv(Matrix(u * v.adjoint())), rank_one_pinv(u, v), 1e-12));
}

TEST_CASE("pinv properties on random ranks") {
  Rng rng(23);
  const struct { Index m, n, r; } shapes[] = {
      {1, 1, 1}, {3, 3, 1}, {5, 3, 2}, {4, 6, 3}, {6, 6, 0}, {7, 2, 2}};
  for (const auto& s : shapes) {
    const Matrix a = random_with_rank(rng, s.m, s.n, s.r);
    const Matrix x = pinv(a);
    check_penrose_unweighted(a, x);
    CHECK(approx_eq(pinv(x), a, 1e-10));
  }
}

TEST_CASE("pinv of empty matrices") {
  const Matrix a(3, 0);
  const Matrix x = pinv(a);
  CHECK(x.rows() == 0);
  CHECK(x.cols() == 3);
  CHECK(pinv(Matrix(0, 0)).rows() == 0);
}

TEST_CASE("sqrt_pd") {
  CHECK(approx_eq(sqrt_pd(Matrix::Identity(2, 2)), Matrix::Identity(2, 2),
                  1e-14));
  Matrix d = rm({{4, 0}, {0, 9}});
  CHECK(approx_eq(sqrt_pd(d), rm({{2, 0}, {0, 3}}), 1e-14));

  // Eigendecomposition oracle for [[2,1],[1,2]]: eigenpairs (1, (1,-1)) and
  // (3, (1,1)) give the root [[(r3+1)/2, (r3-1)/2], [(r3-1)/2, (r3+1)/2]].
  const double r3 = std::sqrt(3.0);
  const Matrix w = rm({{2, 1}, {1, 2}});
  const Matrix expected =
      rm({{(r3 + 1) / 2, (r3 - 1) / 2}, {(r3 - 1) / 2, (r3 + 1) / 2}});
  const Matrix r = sqrt_pd(w);
  CHECK(approx_eq(r, expected, 1e-13));
  CHECK((r * r - w).norm() <= 1e-12);

  CHECK_THROWS_AS(sqrt_pd(rm({{1, 2}, {2, 1}})), NumericalError);  // eig -1
  CHECK_THROWS_AS(sqrt_pd(rm({{1, 1}, {0, 1}})), NumericalError);
}

TEST_CASE("sqrt_pd property") {
  Rng rng(31);
  for (Index n : {1, 2, 5}) {
    const Matrix w = random_pd(rng, n, 50.0);
    const Matrix r = sqrt_pd(w);
    CHECK(rel_residual(r - r.adjoint(), r) <= 1e-12);
    CHECK(approx_eq(r * r, w, 1e-11));
    Eigen::SelfAdjointEigenSolver<Matrix> es(r);
    CHECK(es.eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("weight validation and caches") {
  CHECK_THROWS_AS(Weight(rm({{1, 2}, {0, 1}})), ValidationError);
  CHECK_THROWS_AS(Weight(rm({{1, 2}, {2, 1}})), ValidationError);
  CHECK_THROWS_AS(Weight(Matrix::Zero(2, 2)), ValidationError);
  CHECK_THROWS_AS(Weight(rm({{1, 0}, {0, 1}, {0, 0}})), ValidationError);

  Rng rng(43);
  const Weight w = random_weight(rng, 5, 100.0);
  CHECK(approx_eq(w.chol() * w.chol().adjoint(), w.value(), 1e-12));
  CHECK(approx_eq(w.sqrt() * w.sqrt(), w.value(), 1e-11));
  CHECK(approx_eq(w.inverse() * w.value(), Matrix::Identity(5, 5), 1e-11));
  CHECK(approx_eq(w.sqrt() * w.sqrt_inverse(), Matrix::Identity(5, 5),
                  1e-11));
  CHECK(Weight::identity(0).size() == 0);
}

TEST_CASE("solve_pd") {
  Rng rng(47);
  const Matrix b = random_matrix(rng, 2, 3);
  CHECK(approx_eq(solve_pd(Weight::identity(2), b), b, 1e-15));
  CHECK(approx_eq(solve_pd(Weight(rm({{2, 0}, {0, 4}})),
                           Matrix::Identity(2, 2)),
                  rm({{0.5, 0}, {0, 0.25}}), 1e-14));

  // Hand inverse of [[2,1],[1,2]] is [[2,-1],[-1,2]]/3, so the coupling
  // solve against [[1,0],[0,0]] is [[2/3,0],[-1/3,0]].
  const Weight n11(rm({{2, 1}, {1, 2}}));
  CHECK(approx_eq(solve_pd(n11, rm({{1, 0}, {0, 0}})),
                  rm({{2.0 / 3, 0}, {-1.0 / 3, 0}}), 1e-14));

  const Weight w = random_weight(rng, 6, 1000.0);
  CHECK(approx_eq(solve_pd(w, w.value()), Matrix::Identity(6, 6), 1e-10));
  CHECK_THROWS_AS(solve_pd(n11, random_matrix(rng, 3, 2)), ValidationError);
}

TEST_CASE("rel_residual conventions") {
  CHECK(rel_residual(Matrix::Zero(2, 2), Matrix::Zero(2, 2)) == 0.0);
  // Absolute when the reference is numerically zero.
  const Matrix d = rm({{1e-6, 0}, {0, 0}});
  CHECK(rel_residual(d, Matrix::Zero(2, 2)) == doctest::Approx(1e-6));
  CHECK(rel_residual(d, Matrix::Identity(2, 2)) ==
        doctest::Approx(1e-6 / std::sqrt(2.0)));
}

TEST_CASE("invert_checked flags singular input") {
  Tolerances tol;
  std::vector<std::string> warnings;
  CHECK_THROWS_AS(
      invert_checked(rm({{1, 1}, {1, 1}}), tol, &warnings, "test"),
      NumericalError);
  Matrix nearly = rm({{1, 0}, {0, 1e-16}});
  CHECK_THROWS_AS(invert_checked(nearly, tol, &warnings, "test"),
                  NumericalError);
  Matrix warn_case = rm({{1, 0}, {0, 1e-13}});
  invert_checked(warn_case, tol, &warnings, "test");
  CHECK(warnings.size() == 1);
}
