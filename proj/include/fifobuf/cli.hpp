#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fifobuf {

enum ExitCode : int { exit_ok = 0, exit_fail = 1, exit_usage = 2 };

/// Entry point of the `fifobuf` tool; argv[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fifobuf
