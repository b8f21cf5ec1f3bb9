#ifndef MODUI_CLI_HPP
#define MODUI_CLI_HPP

#include <ostream>

namespace modui {

/// Exit statuses of the command-line driver.
enum Exit : int { kDerivable = 0, kRefutable = 1, kUsage = 2, kDepth = 3 };

/// Runs the `modui` command line. Output goes to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace modui

#endif
