#include "wmp/sec5.hpp"

#include <limits>

#include "wmp/io.hpp"
#include "wmp/linalg.hpp"

namespace wmp {

namespace {

Matrix real_matrix(std::initializer_list<std::initializer_list<double>> rows) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = r > 0 ? static_cast<Index>(rows.begin()->size()) : 0;
  Matrix m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (double v : row) m(i, j++) = Complex(v, 0.0);
    ++i;
  }
  return m;
}

double max_abs_diff(const Matrix& got, const Matrix& want) {
  if (got.rows() != want.rows() || got.cols() != want.cols())
    return std::numeric_limits<double>::infinity();
  if (got.size() == 0) return 0.0;
  return (got - want).cwiseAbs().maxCoeff();
}

}  // namespace

Partition2x2 sec5_partition(const Tolerances& tol) {
  const Matrix a11 = real_matrix({{1, 0}, {0, 0}});
  const Matrix a12 = real_matrix({{1, -1}, {1, 3}});
  const Matrix a21 = real_matrix({{0, -2}, {0, 0}});
  const Matrix a22 = real_matrix({{0, 2}, {0, 0}});
  const Matrix m = real_matrix(
      {{2, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 1, 0}, {0, 0, 0, 1}});
  const Matrix n = real_matrix(
      {{2, 1, 1, 0}, {1, 2, 0, 0}, {1, 0, 1, 0}, {0, 0, 0, 1}});
  return Partition2x2(a11, a12, a21, a22, Weight(m, tol), Weight(n, tol),
                      tol);
}

std::string sec5_problem_json() {
  Problem p;
  p.kind = ProblemKind::part2x2;
  Partition2x2 part = sec5_partition();
  p.matrices.emplace("A11", part.a11);
  p.matrices.emplace("A12", part.a12);
  p.matrices.emplace("A21", part.a21);
  p.matrices.emplace("A22", part.a22);
  p.matrices.emplace("M", part.m->full.value());
  p.matrices.emplace("N", part.n->full.value());
  p.options.method = "weighted";
  return save_problem(p);
}

Sec5Outcome run_sec5(double abs_tol, const Tolerances& tol) {
  Sec5Outcome out;
  const Partition2x2 p = sec5_partition(tol);
  out.trace = wpinv_2x2(p);
  const Wmp2x2Trace& tr = out.trace;

  const std::vector<std::pair<std::string, std::pair<const Matrix*, Matrix>>>
      expected = {
          {"a", {&tr.a_coupling,
                 real_matrix({{2.0 / 3, 0}, {-1.0 / 3, 0}})}},
          {"b", {&tr.b_coupling, real_matrix({{0.5, 0}, {0, 0}})}},
          {"B11", {&tr.b11, real_matrix({{1, -1}, {0, 0}})}},
          {"B12", {&tr.b12, real_matrix({{0, 0}, {1, 3}})}},
          {"B21", {&tr.b21, real_matrix({{0, -2}, {0, 0}})}},
          {"B22", {&tr.b22, real_matrix({{-2.0 / 3, 2}, {0, 0}})}},
          {"B_sharp",
           {&tr.b_sharp, real_matrix({{2, 0, 1.0 / 3, 0},
                                      {-2, 0, -2.0 / 3, 0},
                                      {0, 3, -1, 0},
                                      {0, 3, 1, 0}})}},
          {"E11", {&tr.e11, real_matrix({{4, 0}, {0, 12}})}},
          {"E12", {&tr.e12, real_matrix({{1, 0}, {2, 0}})}},
          {"E21", {&tr.e21, real_matrix({{4, 4}, {0, 0}})}},
          {"E22", {&tr.e22, real_matrix({{4, 0}, {0, 0}})}},
          {"E11_dag",
           {&tr.e11_dag, real_matrix({{0.25, 0}, {0, 1.0 / 12}})}},
          {"F1E", {&tr.f1e, real_matrix({{-0.25, 0},
                                         {-1.0 / 6, 0},
                                         {1, 0},
                                         {0, 1}})}},
          {"F1E_sharp",
           {&tr.f1e_sharp,
            real_matrix({{-1, -1.0 / 3, 1, 0}, {0, 0, 0, 1}})}},
          {"F1E_gram",
           {&tr.f1e_gram, real_matrix({{47.0 / 36, 0}, {0, 1}})}},
          {"SE", {&tr.se, real_matrix({{7.0 / 3, 0}, {0, 0}})}},
          {"Z1", {&tr.z1, real_matrix({{47.0 / 72, 0}, {0, 1}})}},
          {"Z2", {&tr.z2, real_matrix({{18.0 / 47, 0}, {0, 1}})}},
          {"Z3", {&tr.z3, real_matrix({{2, 0, 0, 0},
                                       {0, 1, 0, 0},
                                       {0, 0, 0.5, 0},
                                       {0, 0, 0, 1}})}},
          {"SE_g", {&tr.se_g, real_matrix({{3.0 / 7, 0}, {0, 0}})}},
          {"T", {&tr.t, real_matrix({{-1, -1.0 / 3}, {0, 0}})}},
          {"D", {&tr.sub.d,
                 real_matrix({{-9.0 / 11, 0}, {-6.0 / 11, 0}})}},
          {"S_tilde",
           {&tr.sub.s_tilde, real_matrix({{47.0 / 22, 0}, {0, 1}})}},
          {"C", {&tr.sub.c, real_matrix({{0, 0}, {0, 1}})}},
          {"U_tilde",
           {&tr.sub.u_tilde, real_matrix({{36.0 / 47, 0}, {0, 1}})}},
          {"F1E_sharp_dag",
           {&tr.f1e_sharp_dag, real_matrix({{-9.0 / 47, 0},
                                            {-6.0 / 47, 0},
                                            {36.0 / 47, 0},
                                            {0, 1}})}},
          {"XRE", {&tr.xre, real_matrix({{1, 0, 0, 0},
                                         {0, 1, 0, 0},
                                         {0, 0, 1, 0},
                                         {0, 0, 0, 0}})}},
          {"Bdag11",
           {&tr.bdag11,
            real_matrix({{4.0 / 7, 1.0 / 42}, {-3.0 / 7, 1.0 / 42}})}},
          {"Bdag12",
           {&tr.bdag12,
            real_matrix({{-1.0 / 14, 0}, {-1.0 / 14, 0}})}},
          {"Bdag21",
           {&tr.bdag21,
            real_matrix({{9.0 / 14, 13.0 / 28}, {-3.0 / 14, 5.0 / 28}})}},
          {"Bdag22",
           {&tr.bdag22,
            real_matrix({{-9.0 / 14, 0}, {3.0 / 14, 0}})}},
          {"Adag11",
           {&tr.adag11,
            real_matrix({{1.0 / 7, -2.0 / 7}, {-3.0 / 14, 5.0 / 28}})}},
          {"Adag12",
           {&tr.adag12,
            real_matrix({{3.0 / 7, 0}, {-11.0 / 28, 0}})}},
          {"Adag21",
           {&tr.adag21,
            real_matrix({{9.0 / 14, 13.0 / 28}, {-3.0 / 14, 5.0 / 28}})}},
          {"Adag22",
           {&tr.adag22,
            real_matrix({{-9.0 / 28, 0}, {3.0 / 28, 0}})}},
          {"result",
           {&tr.result,
            real_matrix({{1.0 / 7, -2.0 / 7, 3.0 / 7, 0},
                         {-3.0 / 14, 5.0 / 28, -11.0 / 28, 0},
                         {9.0 / 14, 13.0 / 28, -9.0 / 28, 0},
                         {-3.0 / 14, 5.0 / 28, 3.0 / 28, 0}})}},
      };

  out.all_pass = true;
  for (const auto& [name, pair] : expected) {
    GoldenCheck check;
    check.name = name;
    check.expected = pair.second;
    check.max_abs_diff = max_abs_diff(*pair.first, pair.second);
    check.pass = check.max_abs_diff <= abs_tol;
    if (!check.pass) out.all_pass = false;
    out.checks.push_back(std::move(check));
  }
  return out;
}

}  // namespace wmp
