// cli.hpp: command-line entry point shared by the binary and the tests.
#pragma once

#include <string>
#include <vector>

namespace entsim {

// Subcommands: solve, figure, sweep, validate, presets.
// Returns 0 on success, 1 on validation/runtime failure, 2 on usage errors.
int cli_main(const std::vector<std::string>& args);

}  // namespace entsim
