#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "run_config.hpp"

namespace vtorus::cli {

/// Executes one validated config: writes its artifact, prints a one-line
/// summary to `out`, and returns the exit status (0, 1, 2 or 3).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_config followed by run. `args` excludes the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vtorus::cli
