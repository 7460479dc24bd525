#include "wmp.h"

#include <cstring>
#include <new>
#include <string>

#include "wmp/io.hpp"
#include "wmp/report.hpp"

struct wmp_problem {
  wmp::Problem problem;
  std::string text;  // original document, reparsed by wmp_run
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = new (std::nothrow) char[s.size() + 1];
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

wmp::Json parse_options(const char* options_json) {
  if (options_json == nullptr || *options_json == '\0')
    return wmp::Json::object();
  wmp::Json j = wmp::Json::parse(options_json, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw wmp::ValidationError("options must be a JSON object");
  return j;
}

int run_and_render(const std::string& command, const std::string& source,
                   bool source_is_path, const char* options_json,
                   char** report_out) {
  g_last_error.clear();
  if (report_out != nullptr) *report_out = nullptr;
  try {
    const wmp::RunOutcome out = wmp::run_command(
        command, source, source_is_path, parse_options(options_json));
    if (out.status != 0 && out.report.contains("error"))
      g_last_error = out.report["error"]["message"].get<std::string>();
    if (report_out != nullptr)
      *report_out = dup_string(wmp::dump_canonical(out.report));
    return out.status;
  } catch (const wmp::ValidationError& e) {
    g_last_error = e.what();
    return WMP_ERR_INVALID;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return WMP_ERR_NUMERICAL;
  }
}

}  // namespace

extern "C" {

const char* wmp_version(void) { return "1.0.0"; }

int wmp_problem_load(const char* path, wmp_problem** out) {
  g_last_error.clear();
  if (out == nullptr) {
    g_last_error = "output handle must not be null";
    return WMP_ERR_INVALID;
  }
  *out = nullptr;
  if (path == nullptr) {
    g_last_error = "path must not be null";
    return WMP_ERR_INVALID;
  }
  try {
    std::string text = wmp::read_text_file(path);
    wmp::Problem p = wmp::parse_problem(text);
    *out = new wmp_problem{std::move(p), std::move(text)};
    return WMP_OK;
  } catch (const wmp::ValidationError& e) {
    g_last_error = e.what();
    return WMP_ERR_INVALID;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return WMP_ERR_NUMERICAL;
  }
}

int wmp_problem_parse(const char* json_text, wmp_problem** out) {
  g_last_error.clear();
  if (out == nullptr) {
    g_last_error = "output handle must not be null";
    return WMP_ERR_INVALID;
  }
  *out = nullptr;
  if (json_text == nullptr) {
    g_last_error = "json_text must not be null";
    return WMP_ERR_INVALID;
  }
  try {
    wmp::Problem p = wmp::parse_problem(json_text);
    *out = new wmp_problem{std::move(p), json_text};
    return WMP_OK;
  } catch (const wmp::ValidationError& e) {
    g_last_error = e.what();
    return WMP_ERR_INVALID;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return WMP_ERR_NUMERICAL;
  }
}

void wmp_problem_free(wmp_problem* p) { delete p; }

int wmp_run(const wmp_problem* p, const char* command,
            const char* options_json, char** report_out) {
  if (p == nullptr || command == nullptr) {
    g_last_error = "problem and command must not be null";
    return WMP_ERR_INVALID;
  }
  return run_and_render(command, p->text, /*source_is_path=*/false,
                        options_json, report_out);
}

int wmp_run_file(const char* path, const char* command,
                 const char* options_json, char** report_out) {
  if (path == nullptr || command == nullptr) {
    g_last_error = "path and command must not be null";
    return WMP_ERR_INVALID;
  }
  return run_and_render(command, path, /*source_is_path=*/true, options_json,
                        report_out);
}

int wmp_run_example(const char* options_json, char** report_out) {
  return run_and_render("example-sec5", "", /*source_is_path=*/false,
                        options_json, report_out);
}

const char* wmp_last_error(void) { return g_last_error.c_str(); }

void wmp_free(char* s) { delete[] s; }

}  // extern "C"
