#pragma once

#include <iosfwd>

namespace heightlab::cli {

enum ExitCode { kOk = 0, kUsage = 1, kCheckFailed = 2 };

/// Parses argv, runs one subcommand and writes its report to `out`.
/// Diagnostics and usage text go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace heightlab::cli
