#include "wmp/report.hpp"

#include <chrono>
#include <functional>
#include <vector>

#include "wmp/linalg.hpp"
#include "wmp/mp_core.hpp"
#include "wmp/sec5.hpp"
#include "wmp/weight_transform.hpp"

namespace wmp {

namespace {

using Clock = std::chrono::steady_clock;

Json residuals_to_json(const PenroseResiduals& r, double num_tol) {
  Json j = Json::object();
  j["r1"] = r.r1;
  j["r2"] = r.r2;
  j["r3"] = r.r3;
  j["r4"] = r.r4;
  j["max"] = r.max();
  j["accepted"] = r.within(num_tol);
  return j;
}

Json inputs_to_json(const Problem& p) {
  Json arr = Json::array();
  for (const auto& [name, m] : p.matrices) {
    Json e = Json::object();
    e["name"] = name;
    e["rows"] = m.rows();
    e["cols"] = m.cols();
    arr.push_back(std::move(e));
  }
  return arr;
}

Json options_to_json(const Tolerances& tol, const Json& cli) {
  Json j = Json::object();
  if (cli.contains("method")) j["method"] = cli["method"];
  j["rank_rtol"] = tol.rank_rtol;
  j["num_tol"] = tol.num_tol;
  j["cmp_tol"] = tol.cmp_tol;
  return j;
}

std::string cli_method(const Json& cli, const Problem& p) {
  if (cli.contains("method")) {
    if (!cli["method"].is_string())
      throw ValidationError("method must be a string");
    return cli["method"].get<std::string>();
  }
  if (p.options.method) return *p.options.method;
  throw ValidationError("this command requires a method (pass --method or "
                        "set options.method in the problem file)");
}

double max_abs(const Matrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

Json trace_to_json(const Wmp2x2Trace& tr) {
  Json j = Json::object();
  const std::vector<std::pair<const char*, const Matrix*>> fields = {
      {"a", &tr.a_coupling},     {"b", &tr.b_coupling},
      {"B11", &tr.b11},          {"B12", &tr.b12},
      {"B21", &tr.b21},          {"B22", &tr.b22},
      {"B_sharp", &tr.b_sharp},  {"E11", &tr.e11},
      {"E12", &tr.e12},          {"E21", &tr.e21},
      {"E22", &tr.e22},          {"E11_dag", &tr.e11_dag},
      {"F1E", &tr.f1e},          {"F1E_sharp", &tr.f1e_sharp},
      {"F1E_gram", &tr.f1e_gram}, {"SE", &tr.se},
      {"Z1", &tr.z1},            {"Z2", &tr.z2},
      {"Z3", &tr.z3},            {"SE_g", &tr.se_g},
      {"T", &tr.t},              {"D", &tr.sub.d},
      {"S_tilde", &tr.sub.s_tilde}, {"C", &tr.sub.c},
      {"U_tilde", &tr.sub.u_tilde},
      {"F1E_sharp_dag", &tr.f1e_sharp_dag},
      {"XRE", &tr.xre},          {"Bdag11", &tr.bdag11},
      {"Bdag12", &tr.bdag12},    {"Bdag21", &tr.bdag21},
      {"Bdag22", &tr.bdag22},    {"Adag11", &tr.adag11},
      {"Adag12", &tr.adag12},    {"Adag21", &tr.adag21},
      {"Adag22", &tr.adag22},
  };
  for (const auto& [name, m] : fields) j[name] = matrix_to_json(*m);
  return j;
}

void cmd_pinv(const Problem& p, const Tolerances& tol, const Json&,
              Json& report) {
  if (p.kind != ProblemKind::plain)
    throw ValidationError("pinv expects a problem of kind 'plain'");
  const Matrix a = require_matrix(p, "A");
  const Matrix x = pinv(a, tol.rank_rtol);
  report["result"] = matrix_to_json(x);
  report["residuals"] = residuals_to_json(
      verify_penrose(a, x, Weight::identity(a.rows()),
                     Weight::identity(a.cols()), tol.pd_tol),
      tol.num_tol);
}

void cmd_wpinv(const Problem& p, const Tolerances& tol, const Json&,
               Json& report) {
  if (p.kind != ProblemKind::weighted)
    throw ValidationError("wpinv expects a problem of kind 'weighted'");
  const WeightedProblem w = build_weighted(p, tol);
  const Matrix x = weighted_pinv_oracle(w.a, w.m, w.n, tol.rank_rtol);
  report["result"] = matrix_to_json(x);
  report["residuals"] = residuals_to_json(
      verify_penrose(w.a, x, w.m, w.n, tol.pd_tol), tol.num_tol);
}

void cmd_wpinv_1x2(const Problem& p, const Tolerances& tol, const Json& cli,
                   Json& report) {
  if (p.kind != ProblemKind::part1x2)
    throw ValidationError("wpinv-1x2 expects a problem of kind 'part1x2'");
  const std::string method = cli_method(cli, p);
  const Partition1x2 part = build_part1x2(p, tol);
  Json meta = Json::object();
  meta["method"] = method;
  Stacked1x2 x;
  Matrix target;  // the operator the result inverts
  if (method == "thm32") {
    x = wpinv_1x2_thm32(part);
    const Matrix c = complement_c(part);
    target = hstack(part.a, c);
    meta["inverts"] = "(A, C)";
    report["complement_C"] = matrix_to_json(c);
  } else if (method == "thm33") {
    x = wpinv_1x2_thm33(part);
    target = part.ab();
    meta["inverts"] = "(A, B)";
  } else if (method == "unified") {
    if (cli.contains("n3")) {
      const Weight n3(load_matrix_file(cli["n3"].get<std::string>()), tol);
      meta["n3"] = cli["n3"];
      x = wpinv_1x2_unified(part, n3);
    } else {
      meta["n3"] = "S(N)";
      x = wpinv_1x2_unified(part);
    }
    target = part.ab();
    meta["inverts"] = "(A, B)";
  } else if (method == "xu") {
    x = wpinv_1x2_xu(part);
    target = part.ab();
    meta["inverts"] = "(A, B)";
  } else {
    throw ValidationError("unknown wpinv-1x2 method '" + method +
                          "' (expected thm32, thm33, unified or xu)");
  }
  report["method"] = std::move(meta);
  report["result"] = matrix_to_json(x.stacked());
  Json blocks = Json::object();
  blocks["X1"] = matrix_to_json(x.x1);
  blocks["X2"] = matrix_to_json(x.x2);
  report["result_blocks"] = std::move(blocks);
  report["residuals"] = residuals_to_json(
      verify_penrose(target, x.stacked(), part.m, part.n, tol.pd_tol),
      tol.num_tol);
}

void cmd_wpinv_2x2(const Problem& p, const Tolerances& tol, const Json& cli,
                   Json& report) {
  if (p.kind != ProblemKind::part2x2)
    throw ValidationError("wpinv-2x2 expects a problem of kind 'part2x2'");
  const std::string method = cli_method(cli, p);
  Json meta = Json::object();
  meta["method"] = method;
  if (method == "special" || method == "positive" || method == "general") {
    const Partition2x2 part = build_part2x2(p, tol, /*need_weights=*/false);
    const Matrix a = part.assembled();
    Matrix x;
    if (method == "special") {
      x = pinv_2x2_special(part);
    } else if (method == "positive") {
      const PositivePinv pos = pinv_2x2_positive(part);
      x = pos.pinv;
      report["inverse_13"] = matrix_to_json(pos.inv13);
      const Inverse13Check c = is_13_inverse(a, pos.inv13, tol);
      Json cj = Json::object();
      cj["r1"] = c.r1;
      cj["r3"] = c.r3;
      cj["accepted"] = c.ok;
      report["inverse_13_check"] = std::move(cj);
    } else {
      x = pinv_2x2_general(part);
    }
    report["method"] = std::move(meta);
    report["result"] = matrix_to_json(x);
    report["residuals"] = residuals_to_json(
        verify_penrose(a, x, Weight::identity(a.rows()),
                       Weight::identity(a.cols()), tol.pd_tol),
        tol.num_tol);
  } else if (method == "weighted") {
    const Partition2x2 part = build_part2x2(p, tol, /*need_weights=*/true);
    const Wmp2x2Trace tr = wpinv_2x2(part);
    report["method"] = std::move(meta);
    report["result"] = matrix_to_json(tr.result);
    report["residuals"] = residuals_to_json(
        verify_penrose(part.assembled(), tr.result, part.m->full,
                       part.n->full, tol.pd_tol),
        tol.num_tol);
    if (cli.contains("trace") && cli["trace"].get<bool>())
      report["trace"] = trace_to_json(tr);
  } else {
    throw ValidationError("unknown wpinv-2x2 method '" + method +
                          "' (expected special, positive, general or "
                          "weighted)");
  }
}

void cmd_verify(const Problem& p, const Tolerances& tol, const Json& cli,
                Json& report) {
  if (!cli.contains("candidate"))
    throw ValidationError("verify requires --candidate <file>");
  const Matrix x = load_matrix_file(cli["candidate"].get<std::string>());
  Matrix a;
  Weight m = Weight::identity(0);
  Weight n = Weight::identity(0);
  if (p.kind == ProblemKind::plain) {
    a = require_matrix(p, "A");
    m = Weight::identity(a.rows());
    n = Weight::identity(a.cols());
  } else if (p.kind == ProblemKind::weighted) {
    WeightedProblem w = build_weighted(p, tol);
    a = std::move(w.a);
    m = std::move(w.m);
    n = std::move(w.n);
  } else if (p.kind == ProblemKind::part1x2) {
    const Partition1x2 part = build_part1x2(p, tol);
    a = part.ab();
    m = part.m;
    n = part.n;
  } else {
    const Partition2x2 part = build_part2x2(p, tol, /*need_weights=*/false);
    a = part.assembled();
    m = part.m ? part.m->full : Weight::identity(a.rows());
    n = part.n ? part.n->full : Weight::identity(a.cols());
  }
  report["candidate"] = cli["candidate"];
  report["residuals"] = residuals_to_json(
      verify_penrose(a, x, m, n, tol.pd_tol), tol.num_tol);
}

void cmd_compare(const Problem& p, const Tolerances& tol, const Json&,
                 Json& report) {
  std::vector<std::pair<std::string, Matrix>> results;
  Json skipped = Json::array();
  auto attempt = [&](const std::string& name,
                     const std::function<Matrix()>& fn) {
    try {
      results.emplace_back(name, fn());
    } catch (const std::runtime_error& e) {
      Json s = Json::object();
      s["method"] = name;
      s["reason"] = e.what();
      skipped.push_back(std::move(s));
    }
  };

  if (p.kind == ProblemKind::plain) {
    const Matrix a = require_matrix(p, "A");
    attempt("svd", [&] { return pinv(a, tol.rank_rtol); });
    attempt("oracle", [&] {
      return weighted_pinv_oracle(a, Weight::identity(a.rows()),
                                  Weight::identity(a.cols()), tol.rank_rtol);
    });
  } else if (p.kind == ProblemKind::weighted) {
    const WeightedProblem w = build_weighted(p, tol);
    attempt("oracle", [&] {
      return weighted_pinv_oracle(w.a, w.m, w.n, tol.rank_rtol);
    });
    attempt("reweight_from_identity", [&] {
      return reweight_pinv(w.a, w.m, Weight::identity(w.a.cols()), w.n, tol);
    });
  } else if (p.kind == ProblemKind::part1x2) {
    const Partition1x2 part = build_part1x2(p, tol);
    attempt("oracle", [&] {
      return weighted_pinv_oracle(part.ab(), part.m, part.n, tol.rank_rtol);
    });
    attempt("thm32_mapped",
            [&] { return wpinv_1x2_via_thm32(part).stacked(); });
    attempt("thm33", [&] { return wpinv_1x2_thm33(part).stacked(); });
    attempt("unified", [&] { return wpinv_1x2_unified(part).stacked(); });
    attempt("xu", [&] { return wpinv_1x2_xu(part).stacked(); });
  } else {
    const bool weighted = p.matrices.count("M") && p.matrices.count("N");
    const Partition2x2 part = build_part2x2(p, tol, /*need_weights=*/false);
    if (weighted) {
      attempt("oracle", [&] {
        return weighted_pinv_oracle(part.assembled(), part.m->full,
                                    part.n->full, tol.rank_rtol);
      });
      attempt("weighted", [&] { return wpinv_2x2(part).result; });
    } else {
      const Matrix a = part.assembled();
      attempt("svd", [&] { return pinv(a, tol.rank_rtol); });
      attempt("general", [&] { return pinv_2x2_general(part); });
      attempt("special", [&] { return pinv_2x2_special(part); });
      attempt("positive", [&] { return pinv_2x2_positive(part).pinv; });
    }
  }

  Json methods = Json::array();
  Json result_json = Json::object();
  for (const auto& [name, m] : results) {
    methods.push_back(name);
    result_json[name] = matrix_to_json(m);
  }
  Json pairwise = Json::array();
  double worst = 0.0;
  for (size_t i = 0; i < results.size(); ++i) {
    for (size_t j = i + 1; j < results.size(); ++j) {
      Json e = Json::object();
      e["a"] = results[i].first;
      e["b"] = results[j].first;
      const double d = max_abs(results[i].second - results[j].second);
      e["max_abs_diff"] = d;
      worst = std::max(worst, d);
      pairwise.push_back(std::move(e));
    }
  }
  report["methods"] = std::move(methods);
  if (!skipped.empty()) report["skipped"] = std::move(skipped);
  report["results"] = std::move(result_json);
  report["pairwise"] = std::move(pairwise);
  report["max_pairwise_diff"] = worst;
  report["within_cmp_tol"] = worst <= tol.cmp_tol;
}

int cmd_example_sec5(const Tolerances& tol, Json& report) {
  const Sec5Outcome out = run_sec5(1e-10, tol);
  report["tolerance"] = 1e-10;
  Json checks = Json::array();
  for (const auto& c : out.checks) {
    Json e = Json::object();
    e["name"] = c.name;
    e["max_abs_diff"] = c.max_abs_diff;
    e["pass"] = c.pass;
    checks.push_back(std::move(e));
  }
  report["checks"] = std::move(checks);
  report["all_pass"] = out.all_pass;
  report["trace"] = trace_to_json(out.trace);
  report["result"] = matrix_to_json(out.trace.result);
  const Partition2x2 part = sec5_partition(tol);
  report["residuals"] = residuals_to_json(
      verify_penrose(part.assembled(), out.trace.result, part.m->full,
                     part.n->full, tol.pd_tol),
      tol.num_tol);
  return out.all_pass ? 0 : 2;
}

}  // namespace

RunOutcome run_command(const std::string& command, const std::string& source,
                       bool source_is_path, const Json& cli_options) {
  RunOutcome out;
  out.report = Json::object();
  out.report["command"] = command;
  const auto start = Clock::now();
  auto finish = [&] {
    out.report["timing_ms"] =
        std::chrono::duration<double, std::milli>(Clock::now() - start)
            .count();
  };
  try {
    if (command == "example-sec5") {
      const Tolerances tol = resolve_tolerances(FileOptions{}, cli_options);
      out.report["options"] = options_to_json(tol, cli_options);
      out.status = cmd_example_sec5(tol, out.report);
      finish();
      return out;
    }
    const Problem p =
        source_is_path ? load_problem(source) : parse_problem(source);
    const Tolerances tol = resolve_tolerances(p.options, cli_options);
    out.report["kind"] = to_string(p.kind);
    out.report["inputs"] = inputs_to_json(p);
    out.report["options"] = options_to_json(tol, cli_options);
    if (command == "pinv") {
      cmd_pinv(p, tol, cli_options, out.report);
    } else if (command == "wpinv") {
      cmd_wpinv(p, tol, cli_options, out.report);
    } else if (command == "wpinv-1x2") {
      cmd_wpinv_1x2(p, tol, cli_options, out.report);
    } else if (command == "wpinv-2x2") {
      cmd_wpinv_2x2(p, tol, cli_options, out.report);
    } else if (command == "verify") {
      cmd_verify(p, tol, cli_options, out.report);
    } else if (command == "compare") {
      cmd_compare(p, tol, cli_options, out.report);
    } else {
      throw ValidationError("unknown command '" + command + "'");
    }
    out.status = 0;
  } catch (const PreconditionError& e) {
    out.status = 2;
    Json err = Json::object();
    err["kind"] = "numerical";
    err["message"] = e.what();
    Json res = Json::object();
    res["precondition_12"] = e.residual_12();
    res["precondition_21"] = e.residual_21();
    err["residuals"] = std::move(res);
    out.report["error"] = std::move(err);
  } catch (const ValidationError& e) {
    out.status = 1;
    Json err = Json::object();
    err["kind"] = "validation";
    err["message"] = e.what();
    out.report["error"] = std::move(err);
  } catch (const NumericalError& e) {
    out.status = 2;
    Json err = Json::object();
    err["kind"] = "numerical";
    err["message"] = e.what();
    out.report["error"] = std::move(err);
  }
  finish();
  return out;
}

}  // namespace wmp
