#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mrleq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;        // bad flags, malformed specs, I/O errors
inline constexpr int kExitPrecondition = 2; // failed certificate or numerical precondition
inline constexpr int kExitAssertion = 3;    // experiment / counterexample assertion failed

// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mrleq::cli
