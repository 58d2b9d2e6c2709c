#pragma once

#include <iosfwd>

namespace dwise::cli {

/// Exit codes: 0 success or all checks pass, 1 internal error, 2 counterexample
/// at assert severity, 3 inconclusive, 64 usage or input error.
inline constexpr int kExitCounterexample = 2;
inline constexpr int kExitInconclusive = 3;
inline constexpr int kExitUsage = 64;

/// Runs one `dwise` invocation. Families are read from the named file, or
/// from `in` when the path is "-" or absent.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace dwise::cli
