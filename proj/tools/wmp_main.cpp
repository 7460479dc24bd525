// Command-line front end. All computation lives behind the C API in
// libwmp; this file only parses arguments, forwards them as an options
// document, and prints the report.

#include <cstdio>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "wmp.h"

namespace {

struct CommonFlags {
  std::optional<double> rank_rtol;
  std::optional<double> num_tol;
  std::optional<double> cmp_tol;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--rank-rtol", flags.rank_rtol,
                  "Relative singular-value cutoff (default max(m,n)*eps)");
  cmd->add_option("--num-tol", flags.num_tol,
                  "Relative residual acceptance tolerance");
  cmd->add_option("--cmp-tol", flags.cmp_tol,
                  "Method-vs-oracle agreement tolerance");
}

int run_and_print(const std::string& command, const std::string& file,
                  const nlohmann::json& options) {
  const std::string options_text = options.dump();
  char* report = nullptr;
  int status;
  if (command == "example-sec5")
    status = wmp_run_example(options_text.c_str(), &report);
  else
    status = wmp_run_file(file.c_str(), command.c_str(),
                          options_text.c_str(), &report);
  if (report != nullptr) {
    std::fputs(report, stdout);
    wmp_free(report);
  } else {
    std::fprintf(stdout, "{\"error\": {\"message\": \"%s\"}}\n",
                 wmp_last_error());
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted Moore-Penrose inverses of partitioned complex "
               "matrices"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(wmp_version()));

  std::string file;
  std::string method;
  std::string n3_path;
  std::string candidate_path;
  bool trace = false;
  CommonFlags flags;

  CLI::App* pinv = app.add_subcommand("pinv", "Moore-Penrose inverse of a "
                                              "plain problem");
  pinv->add_option("file", file, "Problem file (kind plain)")->required();
  add_common_flags(pinv, flags);

  CLI::App* wpinv = app.add_subcommand(
      "wpinv", "Weighted Moore-Penrose inverse through the reduction oracle");
  wpinv->add_option("file", file, "Problem file (kind weighted)")->required();
  add_common_flags(wpinv, flags);

  CLI::App* w1 = app.add_subcommand(
      "wpinv-1x2", "Weighted inverse of a row-partitioned operator (A, B)");
  w1->add_option("file", file, "Problem file (kind part1x2)")->required();
  w1->add_option("--method", method, "thm32, thm33, unified or xu");
  w1->add_option("--n3", n3_path,
                 "Matrix file with the auxiliary weight for --method "
                 "unified (default: the Schur complement of N)");
  add_common_flags(w1, flags);

  CLI::App* w2 = app.add_subcommand(
      "wpinv-2x2", "Inverse of a 2x2 partitioned operator");
  w2->add_option("file", file, "Problem file (kind part2x2)")->required();
  w2->add_option("--method", method, "special, positive, general or "
                                     "weighted");
  w2->add_flag("--trace", trace,
               "Include every pipeline intermediate in the report "
               "(weighted method)");
  add_common_flags(w2, flags);

  CLI::App* verify = app.add_subcommand(
      "verify", "Residuals of a candidate inverse against the four "
                "defining conditions");
  verify->add_option("file", file, "Problem file")->required();
  verify->add_option("--candidate", candidate_path, "Matrix file")
      ->required();
  add_common_flags(verify, flags);

  CLI::App* compare = app.add_subcommand(
      "compare", "Run every applicable method plus the oracle and report "
                 "pairwise differences");
  compare->add_option("file", file, "Problem file")->required();
  add_common_flags(compare, flags);

  CLI::App* example = app.add_subcommand(
      "example-sec5", "Run the built-in worked example against its exact "
                      "values");
  add_common_flags(example, flags);

  CLI11_PARSE(app, argc, argv);

  nlohmann::json options = nlohmann::json::object();
  if (!method.empty()) options["method"] = method;
  if (!n3_path.empty()) options["n3"] = n3_path;
  if (!candidate_path.empty()) options["candidate"] = candidate_path;
  if (trace) options["trace"] = true;
  if (flags.rank_rtol) options["rank_rtol"] = *flags.rank_rtol;
  if (flags.num_tol) options["num_tol"] = *flags.num_tol;
  if (flags.cmp_tol) options["cmp_tol"] = *flags.cmp_tol;

  for (CLI::App* cmd : {pinv, wpinv, w1, w2, verify, compare, example})
    if (cmd->parsed()) return run_and_print(cmd->get_name(), file, options);
  return 1;
}
