#pragma once

#include <string>
#include <vector>

#include "wmp/block_2x2.hpp"

namespace wmp {

/// The built-in worked example: a 4x4 real problem with coupled weights on
/// both sides whose weighted pseudoinverse and every pipeline intermediate
/// are known exactly as rationals.
Partition2x2 sec5_partition(const Tolerances& tol = {});

/// The same fixture as a canonical problem document (kind part2x2).
std::string sec5_problem_json();

struct GoldenCheck {
  std::string name;
  Matrix expected;
  double max_abs_diff = 0.0;
  bool pass = false;
};

struct Sec5Outcome {
  Wmp2x2Trace trace;
  std::vector<GoldenCheck> checks;
  bool all_pass = false;
};

/// Runs the weighted 2x2 pipeline on the fixture and compares every
/// intermediate and the final inverse against the embedded exact values at
/// the given absolute tolerance.
Sec5Outcome run_sec5(double abs_tol = 1e-10, const Tolerances& tol = {});

}  // namespace wmp
