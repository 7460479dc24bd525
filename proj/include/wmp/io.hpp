#pragma once

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "wmp/block_1x2.hpp"
#include "wmp/block_2x2.hpp"
#include "wmp/types.hpp"
#include "wmp/weight.hpp"

namespace wmp {

using Json = nlohmann::ordered_json;

enum class ProblemKind { plain, weighted, part1x2, part2x2 };

std::string to_string(ProblemKind kind);
ProblemKind problem_kind_from_string(const std::string& s);

/// Raw options carried by a problem file; resolution against environment
/// variables and command-line flags happens in resolve_tolerances.
struct FileOptions {
  std::optional<double> rank_rtol;
  std::optional<double> num_tol;
  std::optional<double> cmp_tol;
  std::optional<std::string> method;
};

struct Problem {
  ProblemKind kind = ProblemKind::plain;
  std::map<std::string, Matrix> matrices;  // keyed by name, sorted
  FileOptions options;
};

/// Effective tolerances: defaults, overridden by file options, overridden
/// by the WMP_RANK_RTOL / WMP_NUM_TOL / WMP_CMP_TOL environment variables,
/// overridden by explicit command-line values in `cli` (keys rank_rtol,
/// num_tol, cmp_tol).
Tolerances resolve_tolerances(const FileOptions& file, const Json& cli);

/// Parses and eagerly validates a problem document: required matrices for
/// the declared kind, finite entries, and weight validation. Throws
/// ValidationError naming the offending field.
Problem parse_problem(const std::string& json_text);
Problem load_problem(const std::string& path);

/// A single matrix document {"rows", "cols", "data"} (a "name" field is
/// accepted and ignored).
Matrix parse_matrix_file(const std::string& json_text,
                         const std::string& what);
Matrix load_matrix_file(const std::string& path);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const std::string& name);

/// Canonical serialization: insertion-ordered keys, matrix rows inline,
/// floating-point numbers rendered with 17 significant digits so that
/// save(load(f)) is byte-identical for canonical inputs.
std::string dump_canonical(const Json& j);

std::string save_problem(const Problem& p);

// Typed views (validated against `tol`).
struct WeightedProblem {
  Matrix a;
  Weight m;
  Weight n;
};
Matrix require_matrix(const Problem& p, const std::string& name);
WeightedProblem build_weighted(const Problem& p, const Tolerances& tol);
Partition1x2 build_part1x2(const Problem& p, const Tolerances& tol);
Partition2x2 build_part2x2(const Problem& p, const Tolerances& tol,
                           bool need_weights);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace wmp
