#pragma once

#include <ostream>

namespace resavg::cli {

inline constexpr int kSchemaVersion = 1;

/// Parses argv and runs one subcommand. Returns 0 on success, 1 on a domain
/// error (a JSON error object is written to `out`), 2 on a usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace resavg::cli
