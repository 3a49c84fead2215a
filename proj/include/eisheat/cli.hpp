#pragma once

#include <iosfwd>

namespace eis::cli {

enum ExitCode : int {
    kOk = 0,
    kParseError = 2,
    kPreconditionError = 3,
    kNumericalFailure = 4,
};

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace eis::cli
