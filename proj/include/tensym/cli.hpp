#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tensym {

/// Entry point of the command line tool, callable in process so tests can
/// drive it without spawning binaries. `args` excludes the program name.
/// Returns the process exit code:
///   0  success (all checks the command performed passed),
///   1  a verification or property check failed (including closure caps),
///   2  usage or input errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tensym
