#include "wmp/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "wmp/linalg.hpp"

namespace wmp {

namespace {

double env_or(const char* name, std::optional<double> fallback,
              double otherwise) {
  const char* raw = std::getenv(name);
  if (raw != nullptr && *raw != '\0') {
    char* end = nullptr;
    const double v = std::strtod(raw, &end);
    if (end == raw || *end != '\0')
      throw ValidationError(std::string(name) +
                            ": cannot parse value '" + raw + "'");
    return v;
  }
  return fallback.value_or(otherwise);
}

double json_number(const Json& j, const std::string& what) {
  if (!j.is_number())
    throw ValidationError(what + ": expected a number");
  return j.get<double>();
}

Complex entry_from_json(const Json& j, const std::string& name) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  throw ValidationError("matrix '" + name +
                        "': entries must be numbers or [re, im] pairs");
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

bool is_scalar(const Json& j) {
  return !j.is_array() && !j.is_object();
}

void dump_value(const Json& j, std::string& out, int indent) {
  const std::string pad(static_cast<size_t>(indent) * 2, ' ');
  const std::string pad_in(static_cast<size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::number_float:
      out += format_number(j.get<double>());
      break;
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        break;
      }
      bool flat = true;
      for (const auto& e : j)
        if (!is_scalar(e)) flat = false;
      if (flat) {
        out += "[";
        for (size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          dump_value(j[i], out, indent);
        }
        out += "]";
      } else {
        out += "[\n";
        for (size_t i = 0; i < j.size(); ++i) {
          out += pad_in;
          dump_value(j[i], out, indent + 1);
          if (i + 1 < j.size()) out += ",";
          out += "\n";
        }
        out += pad + "]";
      }
      break;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        break;
      }
      out += "{\n";
      size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        out += pad_in + Json(it.key()).dump() + ": ";
        dump_value(it.value(), out, indent + 1);
        if (i + 1 < j.size()) out += ",";
        out += "\n";
      }
      out += pad + "}";
      break;
    }
    default:
      out += j.dump();  // null, bool, integers, strings
      break;
  }
}

const std::map<ProblemKind, std::vector<std::string>>& required_matrices() {
  static const std::map<ProblemKind, std::vector<std::string>> req = {
      {ProblemKind::plain, {"A"}},
      {ProblemKind::weighted, {"A", "M", "N"}},
      {ProblemKind::part1x2, {"A", "B", "M", "N1", "L", "N2"}},
      {ProblemKind::part2x2, {"A11", "A12", "A21", "A22"}},
  };
  return req;
}

void validate_problem(const Problem& p) {
  for (const auto& name : required_matrices().at(p.kind))
    if (p.matrices.find(name) == p.matrices.end())
      throw ValidationError("problem of kind '" + to_string(p.kind) +
                            "' is missing matrix '" + name + "'");
  const Tolerances tol = resolve_tolerances(p.options, Json::object());
  switch (p.kind) {
    case ProblemKind::plain:
      break;
    case ProblemKind::weighted:
      build_weighted(p, tol);
      break;
    case ProblemKind::part1x2:
      build_part1x2(p, tol);
      break;
    case ProblemKind::part2x2:
      build_part2x2(p, tol, /*need_weights=*/false);
      break;
  }
}

}  // namespace

std::string to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::plain: return "plain";
    case ProblemKind::weighted: return "weighted";
    case ProblemKind::part1x2: return "part1x2";
    case ProblemKind::part2x2: return "part2x2";
  }
  return "?";
}

ProblemKind problem_kind_from_string(const std::string& s) {
  if (s == "plain") return ProblemKind::plain;
  if (s == "weighted") return ProblemKind::weighted;
  if (s == "part1x2") return ProblemKind::part1x2;
  if (s == "part2x2") return ProblemKind::part2x2;
  throw ValidationError("unknown problem kind '" + s +
                        "' (expected plain, weighted, part1x2 or part2x2)");
}

Tolerances resolve_tolerances(const FileOptions& file, const Json& cli) {
  Tolerances tol;
  tol.rank_rtol = env_or("WMP_RANK_RTOL", file.rank_rtol, tol.rank_rtol);
  tol.num_tol = env_or("WMP_NUM_TOL", file.num_tol, tol.num_tol);
  tol.cmp_tol = env_or("WMP_CMP_TOL", file.cmp_tol, tol.cmp_tol);
  if (cli.contains("rank_rtol"))
    tol.rank_rtol = json_number(cli["rank_rtol"], "rank_rtol");
  if (cli.contains("num_tol"))
    tol.num_tol = json_number(cli["num_tol"], "num_tol");
  if (cli.contains("cmp_tol"))
    tol.cmp_tol = json_number(cli["cmp_tol"], "cmp_tol");
  return tol;
}

Matrix matrix_from_json(const Json& j, const std::string& name) {
  if (!j.is_object())
    throw ValidationError("matrix '" + name + "': expected an object");
  if (!j.contains("rows") || !j.contains("cols") || !j.contains("data"))
    throw ValidationError("matrix '" + name +
                          "': requires rows, cols and data");
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer())
    throw ValidationError("matrix '" + name +
                          "': rows and cols must be integers");
  const auto rows = j["rows"].get<long long>();
  const auto cols = j["cols"].get<long long>();
  if (rows < 0 || cols < 0)
    throw ValidationError("matrix '" + name +
                          "': rows and cols must be nonnegative");
  const Json& data = j["data"];
  if (!data.is_array() || static_cast<long long>(data.size()) != rows)
    throw ValidationError("matrix '" + name + "': data must hold " +
                          std::to_string(rows) + " rows");
  Matrix m(rows, cols);
  for (long long i = 0; i < rows; ++i) {
    const Json& row = data[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<long long>(row.size()) != cols)
      throw ValidationError("matrix '" + name + "': row " +
                            std::to_string(i) + " must hold " +
                            std::to_string(cols) + " entries");
    for (long long k = 0; k < cols; ++k)
      m(i, k) = entry_from_json(row[static_cast<size_t>(k)], name);
  }
  if (!all_finite(m))
    throw ValidationError("matrix '" + name + "': entries must be finite");
  return m;
}

Json matrix_to_json(const Matrix& m) {
  Json j = Json::object();
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json data = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index k = 0; k < m.cols(); ++k) {
      const Complex& z = m(i, k);
      if (z.imag() == 0.0)
        row.push_back(z.real());
      else
        row.push_back(Json::array({z.real(), z.imag()}));
    }
    data.push_back(std::move(row));
  }
  j["data"] = std::move(data);
  return j;
}

Problem parse_problem(const std::string& json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("problem: invalid JSON: ") + e.what());
  }
  if (!doc.is_object())
    throw ValidationError("problem: top level must be an object");
  if (!doc.contains("kind") || !doc["kind"].is_string())
    throw ValidationError("problem: requires a string field 'kind'");
  Problem p;
  p.kind = problem_kind_from_string(doc["kind"].get<std::string>());
  if (!doc.contains("matrices") || !doc["matrices"].is_object())
    throw ValidationError("problem: requires an object field 'matrices'");
  for (auto it = doc["matrices"].begin(); it != doc["matrices"].end(); ++it)
    p.matrices.emplace(it.key(), matrix_from_json(it.value(), it.key()));
  if (doc.contains("options")) {
    const Json& o = doc["options"];
    if (!o.is_object())
      throw ValidationError("problem: options must be an object");
    if (o.contains("rank_rtol"))
      p.options.rank_rtol = json_number(o["rank_rtol"], "options.rank_rtol");
    if (o.contains("num_tol"))
      p.options.num_tol = json_number(o["num_tol"], "options.num_tol");
    if (o.contains("cmp_tol"))
      p.options.cmp_tol = json_number(o["cmp_tol"], "options.cmp_tol");
    if (o.contains("method")) {
      if (!o["method"].is_string())
        throw ValidationError("problem: options.method must be a string");
      p.options.method = o["method"].get<std::string>();
    }
  }
  validate_problem(p);
  return p;
}

Problem load_problem(const std::string& path) {
  return parse_problem(read_text_file(path));
}

Matrix parse_matrix_file(const std::string& json_text,
                         const std::string& what) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(what + ": invalid JSON: " + e.what());
  }
  return matrix_from_json(doc, what);
}

Matrix load_matrix_file(const std::string& path) {
  return parse_matrix_file(read_text_file(path), path);
}

std::string dump_canonical(const Json& j) {
  std::string out;
  dump_value(j, out, 0);
  out += "\n";
  return out;
}

std::string save_problem(const Problem& p) {
  Json doc = Json::object();
  doc["kind"] = to_string(p.kind);
  Json mats = Json::object();
  for (const auto& [name, m] : p.matrices) mats[name] = matrix_to_json(m);
  doc["matrices"] = std::move(mats);
  Json opts = Json::object();
  if (p.options.rank_rtol) opts["rank_rtol"] = *p.options.rank_rtol;
  if (p.options.num_tol) opts["num_tol"] = *p.options.num_tol;
  if (p.options.cmp_tol) opts["cmp_tol"] = *p.options.cmp_tol;
  if (p.options.method) opts["method"] = *p.options.method;
  if (!opts.empty()) doc["options"] = std::move(opts);
  return dump_canonical(doc);
}

Matrix require_matrix(const Problem& p, const std::string& name) {
  auto it = p.matrices.find(name);
  if (it == p.matrices.end())
    throw ValidationError("problem is missing matrix '" + name + "'");
  return it->second;
}

namespace {

Weight named_weight(const Problem& p, const std::string& name,
                    const Tolerances& tol) {
  try {
    return Weight(require_matrix(p, name), tol);
  } catch (const ValidationError& e) {
    throw ValidationError("matrix '" + name + "': " + e.what());
  }
}

}  // namespace

WeightedProblem build_weighted(const Problem& p, const Tolerances& tol) {
  Matrix a = require_matrix(p, "A");
  Weight m = named_weight(p, "M", tol);
  Weight n = named_weight(p, "N", tol);
  if (m.size() != a.rows() || n.size() != a.cols())
    throw ValidationError("weights M and N must match the shape of A");
  return {std::move(a), std::move(m), std::move(n)};
}

Partition1x2 build_part1x2(const Problem& p, const Tolerances& tol) {
  return Partition1x2(require_matrix(p, "A"), require_matrix(p, "B"),
                      named_weight(p, "M", tol), named_weight(p, "N1", tol),
                      require_matrix(p, "L"), require_matrix(p, "N2"), tol);
}

Partition2x2 build_part2x2(const Problem& p, const Tolerances& tol,
                           bool need_weights) {
  std::optional<Weight> m;
  std::optional<Weight> n;
  if (p.matrices.count("M")) m = named_weight(p, "M", tol);
  if (p.matrices.count("N")) n = named_weight(p, "N", tol);
  if (need_weights && (!m || !n))
    throw ValidationError("the weighted method requires matrices M and N");
  return Partition2x2(require_matrix(p, "A11"), require_matrix(p, "A12"),
                      require_matrix(p, "A21"), require_matrix(p, "A22"),
                      std::move(m), std::move(n), tol);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write file '" + path + "'");
  out << text;
}

}  // namespace wmp
