#pragma once

// Command-line front end: betti, verify {thm2, cor4, compare, grid}, plan.
//
// Exit codes: 0 verified (or success), 1 usage error, hypothesis failure or
// internal error, 2 violated, 3 genericity failure.

#include <ostream>
#include <string>
#include <vector>

namespace syzygy {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitViolated = 2;
constexpr int kExitGenericity = 3;

/// args excludes the program name. Reports go to out (or --output), seeds
/// drawn for runs without --seed and diagnostics go to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace syzygy
