#pragma once

#include <iosfwd>

namespace pentagrow::cli {

enum ExitCode : int {
    kOk = 0,
    kVerificationFailed = 1,
    kUsage = 2,
    kIo = 3,
};

/// Entry point of the pentagrow command; argv[0] is the program name.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pentagrow::cli
