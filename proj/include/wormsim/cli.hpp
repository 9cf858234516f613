#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wormsim {

enum ExitCode : int { kExitOk = 0, kExitDomain = 1, kExitIo = 2 };

/// Entry point of the `wormsim` tool. `args` excludes the program name.
/// Subcommands: run, montecarlo, sweep, plot, generate, canonical.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wormsim
