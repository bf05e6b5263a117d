#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "revdetect/cli/providers.hpp"
#include "revdetect/cli/run_config.hpp"
#include "revdetect/cli/workspace.hpp"

namespace revdetect::cli {

struct CommandContext {
  RunConfig config;
  Workspace workspace;
  ProviderFactory& providers;
  bool force = false;
  bool verbose = false;
  std::ostream& out;
  std::ostream& err;
  std::map<std::string, long long> counts;  // recorded in the run manifest
};

// Each command returns kExitOk or kExitPartial and throws ConfigError,
// MissingInput or BudgetExceeded for the other exit statuses. Existing
// per-item outputs are reused unless `force` is set.
int cmd_ingest(CommandContext& ctx);
int cmd_generate(CommandContext& ctx);
int cmd_anchor(CommandContext& ctx);
int cmd_detect(CommandContext& ctx);
int cmd_calibrate(CommandContext& ctx);
int cmd_evaluate(CommandContext& ctx);
int cmd_report(CommandContext& ctx);

}  // namespace revdetect::cli
