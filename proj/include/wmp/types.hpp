#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace wmp {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

// Error taxonomy mirrors the tool's status codes: validation errors are
// status 1 (bad input), numerical errors are status 2 (a computation that
// should succeed on valid input broke down).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tolerances {
  double herm_tol = 1e-10;   // relative Frobenius bound for Hermitian symmetry
  double pd_tol = 1e-12;     // absolute floor for Cholesky pivots / eigenvalues
  double num_tol = 1e-8;     // relative residual acceptance
  double cmp_tol = 1e-8;     // method-vs-oracle agreement
  double cond_warn = 1e12;   // condition estimate: warn above this
  double cond_fail = 1e15;   // condition estimate: fail above this
  double rank_rtol = -1.0;   // negative means max(rows, cols) * machine eps
};

}  // namespace wmp
