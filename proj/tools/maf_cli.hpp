#pragma once

#include <iosfwd>

namespace maf::cli {

/// Full command-line front end; returns the process exit code (0 success,
/// 2 argument/parse/validation failure). Output goes to the given streams so
/// tests can drive the commands in process.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace maf::cli
