#pragma once

// kadtool front end, kept in a library so tests can drive it in-process.

#include <iosfwd>
#include <string>
#include <vector>

namespace kad::cli {

/// Exit statuses: the checked property holds / is refuted / the invocation
/// itself failed (usage, parse, or model error).
enum ExitCode : int { kHolds = 0, kRefuted = 1, kError = 2 };

/// `args` excludes the program name. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace kad::cli
