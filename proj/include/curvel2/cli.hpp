#pragma once

// Command-line front end: analyze, cohomology, local and verify.

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace curvel2 {

constexpr const char* kToolVersion = "1.0.0";

enum ExitCode { kExitOk = 0, kExitFailure = 1, kExitInput = 2 };

/// Runs the tool on `args` (without the program name). The report goes to
/// `out`, diagnostics to `err`; returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Plain-text rendering used by --format table.
std::string render_table(const nlohmann::json& report);

}  // namespace curvel2
