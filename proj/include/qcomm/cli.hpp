#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qcomm/report.hpp"

namespace qcomm {

/// Exit codes: 0 ok, 1 verification mismatch, 2 closure not reached, 3 input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitNonClosure = 2;
inline constexpr int kExitInput = 3;

/// Runs one command line (args excludes the program name). The rendered
/// report goes to out, or to the --out file; diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, RunReport* report = nullptr);

}  // namespace qcomm
