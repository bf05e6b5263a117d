#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "revdetect/cli/providers.hpp"

namespace revdetect::cli {

// Parses `args` (without the program name), runs one command and returns its
// exit status. `providers` may be null, in which case clients are built from
// the config.
int run_cli(const std::vector<std::string>& args, ProviderFactory* providers, std::ostream& out,
            std::ostream& err);

}  // namespace revdetect::cli
