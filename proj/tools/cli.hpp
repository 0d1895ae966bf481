#pragma once

// Command-line front end. run() takes the arguments after the program name
// and returns the exit code with everything that would be printed, so the
// tests can drive it without a process boundary.
//
// Exit codes: 0 ok, 1 parse error, 2 rejected precondition, 3 cap exceeded,
// 4 internal error.

#include <string>
#include <vector>

namespace perspectra::cli {

struct Outcome {
    int exit_code = 0;
    std::string out;
    std::string err;
};

Outcome run(const std::vector<std::string>& args);

inline constexpr const char* kVersion = "0.1.0";

} // namespace perspectra::cli
