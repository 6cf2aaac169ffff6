#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace greensign::cli {

/// Exit statuses of `run`.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResonance = 3;
inline constexpr int kExitHypothesis = 4;

/// Parses the command line, runs one subcommand and writes its report to `out`
/// (or the --output file). Errors go to `err` as one JSON line
/// {"error": <code>, "message": <text>}.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

/// Same, with the arguments after the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace greensign::cli
