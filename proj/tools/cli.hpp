#pragma once

// Command-line front end. run_cli is main() with injectable streams so the
// commands can be exercised in-process.
//
// Exit codes: 0 pass, 1 verification failure, 2 input error,
// 3 chart singularity, 4 non-Lagrangian input.

#include <iosfwd>
#include <string>
#include <vector>

namespace lhyp::cli {

enum ExitCode { kPass = 0, kVerifyFailed = 1, kInputError = 2, kChartSingular = 3, kNotLagrangian = 4 };

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lhyp::cli
