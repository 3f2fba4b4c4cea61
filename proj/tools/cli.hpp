#pragma once

#include <iosfwd>

namespace rimrl::cli {

/// Runs the command line and returns the process exit code:
/// 0 success, 2 usage or input error, 3 numeric failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rimrl::cli
