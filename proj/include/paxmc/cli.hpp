#ifndef PAXMC_CLI_HPP_
#define PAXMC_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace paxmc {

// Process exit codes.
inline constexpr int kExitSafe = 0;
inline constexpr int kExitUnsafe = 1;
inline constexpr int kExitLimit = 2;
inline constexpr int kExitInconclusive = 3;
inline constexpr int kExitUsage = 64;

/// Entry point of the `paxmc` tool; `args` excludes the program name.
/// Subcommands: run (default when the first argument is a flag), sweep,
/// check, replay.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace paxmc

#endif  // PAXMC_CLI_HPP_
