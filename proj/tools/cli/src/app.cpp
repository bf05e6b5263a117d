#include "revdetect/cli/app.hpp"

#include <functional>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "revdetect/cli/commands.hpp"
#include "revdetect/cli/errors.hpp"
#include "revdetect/llm/provider.hpp"
#include "revdetect/util/config.hpp"

namespace revdetect::cli {
namespace {

struct Flags {
  std::string config;
  bool force = false;
  bool verbose = false;
  std::vector<std::string> set;
  std::optional<std::string> in, out;
  std::optional<std::string> papers, archetypes;
  std::optional<int> n;
  std::optional<std::string> detectors;
  std::optional<double> target_fpr;
  std::optional<int> k;
  std::optional<long long> seed;
  std::optional<std::string> fpr_levels;
  std::optional<std::string> formats;
};

std::string absolute(const std::string& path) {
  return std::filesystem::absolute(path).lexically_normal().string();
}

// Command-line values override the file.
void apply_flags(const Flags& f, util::KeyValueConfig& c) {
  for (const auto& assignment : f.set) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ConfigError("--set expects key=value, got '" + assignment + "'");
    }
    c.set(assignment.substr(0, eq), assignment.substr(eq + 1));
  }
  if (f.in) c.set("run.corpus", absolute(*f.in));
  if (f.out) c.set("run.output", absolute(*f.out));
  if (f.papers) c.set("generate.papers", *f.papers);
  if (f.archetypes) c.set("generate.archetypes", *f.archetypes);
  if (f.n) c.set("anchor.n", std::to_string(*f.n));
  if (f.detectors) c.set("detect.detectors", *f.detectors);
  if (f.target_fpr) c.set("calibrate.target_fpr", std::to_string(*f.target_fpr));
  if (f.k) c.set("calibrate.k", std::to_string(*f.k));
  if (f.seed) c.set("run.seed", std::to_string(*f.seed));
  if (f.fpr_levels) c.set("evaluate.fpr_levels", *f.fpr_levels);
  if (f.formats) c.set("report.formats", *f.formats);
}

int exit_code_for(const std::exception_ptr& error, std::ostream& err) {
  try {
    std::rethrow_exception(error);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const MissingInput& e) {
    err << "missing input: " << e.what() << "\n";
    return kExitConfig;
  } catch (const CorpusError& e) {
    err << "corpus error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const BudgetExceeded& e) {
    err << "provider failure: " << e.what() << "\n";
    return kExitProviderBudget;
  } catch (const llm::ProviderError& e) {
    err << "provider failure: " << e.what() << "\n";
    return e.kind() == llm::ProviderErrorKind::Auth ? kExitProviderBudget : kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, ProviderFactory* providers, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Detect AI-written peer reviews and evaluate detectors", "revdetect"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;
  app.add_option("--config", f.config, "INI run configuration");
  app.add_flag("--force", f.force, "Recompute outputs that already exist");
  app.add_flag("--verbose", f.verbose, "Log every processed item");
  app.add_option("--set", f.set, "Override a config key, e.g. --set anchor.n=3");
  app.add_option("--out", f.out, "Output directory (run.output)");

  using Runner = std::function<int(CommandContext&)>;
  std::vector<std::pair<CLI::App*, Runner>> commands;
  const auto command = [&](const char* name, const char* help, Runner run) {
    CLI::App* sub = app.add_subcommand(name, help);
    commands.emplace_back(sub, std::move(run));
    return sub;
  };
  command("ingest", "Validate a JSONL corpus and copy it into the output directory", cmd_ingest)
      ->add_option("--in", f.in, "Corpus JSONL file (run.corpus)");
  auto* generate = command("generate", "Generate archetype reviews", cmd_generate);
  generate->add_option("--papers", f.papers, "Comma-separated paper ids or 'all'");
  generate->add_option("--archetypes", f.archetypes, "Comma-separated archetype names");
  command("anchor", "Build anchor reviews and their embeddings", cmd_anchor)
      ->add_option("--n", f.n, "Anchor reviews per paper");
  command("detect", "Score every review with the selected detectors", cmd_detect)
      ->add_option("--detectors", f.detectors, "anchor,judge,classifier,api");
  auto* calibrate = command("calibrate", "Cross-validated thresholds at a target FPR",
                            cmd_calibrate);
  calibrate->add_option("--target-fpr", f.target_fpr, "Target false positive rate");
  calibrate->add_option("--k", f.k, "Number of folds");
  calibrate->add_option("--seed", f.seed, "Shuffle seed");
  command("evaluate", "TPR at fixed FPR, ROC curves and breakdowns", cmd_evaluate)
      ->add_option("--fpr-levels", f.fpr_levels, "Comma-separated FPR levels");
  command("report", "Render evaluation results", cmd_report)
      ->add_option("--formats", f.formats, "Comma-separated: csv,md,svg");

  std::vector<std::string> argv_storage{"revdetect"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const auto it = std::find_if(commands.begin(), commands.end(),
                               [&](const auto& c) { return c.first == chosen; });
  const std::vector<std::string> recorded_args(args.begin(), args.end());

  std::optional<Workspace> workspace;
  std::optional<OutputLock> lock;
  std::optional<CommandContext> ctx;
  RunRecord run_record;
  run_record.command = chosen->get_name();
  run_record.arguments = recorded_args;
  run_record.started_at = std::chrono::system_clock::now();
  int code = kExitOk;
  try {
    util::KeyValueConfig kv;
    std::filesystem::path base = std::filesystem::current_path();
    if (!f.config.empty()) {
      if (!std::filesystem::is_regular_file(f.config)) {
        throw ConfigError("config file not found: " + f.config);
      }
      try {
        kv = util::KeyValueConfig::load(f.config);
      } catch (const ParseError& e) {
        throw ConfigError(e.what());
      }
      base = std::filesystem::absolute(f.config).parent_path();
    }
    apply_flags(f, kv);
    RunConfig config = run_config_from(kv, base);
    run_record.config = kv.values();

    std::unique_ptr<ProviderFactory> owned;
    if (!providers) {
      owned = std::make_unique<DefaultProviderFactory>(config.transcript_log);
      providers = owned.get();
    }
    workspace.emplace(config.output_dir);
    if (chosen->get_name() != "ingest" && !std::filesystem::is_directory(config.output_dir)) {
      throw MissingInput("output directory " + config.output_dir.string() +
                         " does not exist; run `ingest` first");
    }
    lock.emplace(*workspace);
    ctx.emplace(CommandContext{std::move(config), *workspace, *providers, f.force, f.verbose, out,
                               err, {}});
    code = it->second(*ctx);
  } catch (...) {
    code = exit_code_for(std::current_exception(), err);
    try {
      std::rethrow_exception(std::current_exception());
    } catch (const std::exception& e) {
      run_record.error = e.what();
    }
  }
  if (lock) {
    run_record.finished_at = std::chrono::system_clock::now();
    run_record.exit_code = code;
    if (ctx) run_record.counts = ctx->counts;
    try {
      write_run_record(*workspace, run_record);
    } catch (const std::exception& e) {
      err << "warning: could not write run metadata: " << e.what() << "\n";
    }
  }
  return code;
}

}  // namespace revdetect::cli
