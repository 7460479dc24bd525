#pragma once

#include <string>

#include "wmp/io.hpp"

namespace wmp {

/// Result of one command: a status aligned with the tool's exit codes
/// (0 success, 1 input/validation error, 2 numerical failure) and a single
/// JSON report document.
struct RunOutcome {
  int status = 0;
  Json report;
};

/// Executes one subcommand against a problem document and renders the
/// report. `source` is a file path when `source_is_path` is set, otherwise
/// raw JSON text; it is ignored by `example-sec5`. `cli_options` carries
/// method / n3 / candidate / trace and tolerance overrides.
RunOutcome run_command(const std::string& command, const std::string& source,
                       bool source_is_path, const Json& cli_options);

}  // namespace wmp
