#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sfd::cli {

/// Exit codes of run().
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,     ///< I/O or unexpected errors
  kBadInput = 2,    ///< validation and parse errors
  kNumerical = 3,   ///< accuracy, divergence and synthesis errors
};

/// Runs one sfd_lab command.  args excludes the program name, e.g.
/// {"ml", "--alpha", "1", "--beta", "1", "--z", "1"}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Locale-independent shortest form with 12 significant digits.
std::string format_number(double v);

}  // namespace sfd::cli
