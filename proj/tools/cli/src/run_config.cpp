#include "revdetect/cli/run_config.hpp"

#include <algorithm>
#include <sstream>

#include "revdetect/cli/errors.hpp"
#include "revdetect/llm/prompts.hpp"
#include "revdetect/util/strings.hpp"

namespace revdetect::cli {
namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& value) {
  if (value.empty()) return {};
  std::filesystem::path p(value);
  return p.is_absolute() ? p : (base / p).lexically_normal();
}

std::vector<double> parse_doubles(const std::string& key, const std::vector<std::string>& items) {
  std::vector<double> out;
  for (const auto& item : items) {
    util::KeyValueConfig one;
    one.set(key, item);
    out.push_back(one.get_double(key, 0.0));
  }
  return out;
}

llm::EndpointConfig endpoint(const util::KeyValueConfig& c, const std::string& section,
                             const std::string& default_model) {
  llm::EndpointConfig e;
  const auto key = [&](const char* name) { return section + "." + name; };
  e.provider = util::ascii_lower(c.get_string(key("provider"), "offline"));
  e.base_url = c.get_string(key("base_url"), "");
  e.model_ref = c.get_string(key("model"), default_model);
  e.credential_env = c.get_string(key("credential_env"), "");
  e.timeout = std::chrono::milliseconds(c.get_int(key("timeout_ms"), 60000));
  e.max_in_flight = static_cast<int>(c.get_int(key("max_in_flight"), 4));
  e.retry.max_attempts = static_cast<int>(c.get_int(key("max_attempts"), 3));
  e.retry.initial_backoff = std::chrono::milliseconds(c.get_int(key("initial_backoff_ms"), 500));
  e.retry.max_backoff = std::chrono::milliseconds(c.get_int(key("max_backoff_ms"), 8000));
  e.path = c.get_string(key("path"), "");
  return e;
}

void validate_endpoint(const llm::EndpointConfig& e, const std::string& section) {
  if (e.provider != "offline" && e.provider != "openai" && e.provider != "http") {
    throw ConfigError(section + ".provider must be offline, openai or http, got '" +
                      e.provider + "'");
  }
  if (e.provider != "offline" && e.base_url.empty()) {
    throw ConfigError(section + ".base_url is required for provider '" + e.provider + "'");
  }
  if (e.model_ref.empty()) throw ConfigError(section + ".model must not be empty");
  if (e.max_in_flight < 1) throw ConfigError(section + ".max_in_flight must be >= 1");
  if (e.retry.max_attempts < 1) throw ConfigError(section + ".max_attempts must be >= 1");
  if (e.timeout.count() <= 0) throw ConfigError(section + ".timeout_ms must be > 0");
}

}  // namespace

RunConfig run_config_from(const util::KeyValueConfig& c, const std::filesystem::path& base_dir) {
  RunConfig r;
  try {
    r.corpus = resolve(base_dir, c.get_string("run.corpus", ""));
    r.output_dir = resolve(base_dir, c.get_string("run.output", "out"));
    r.corpus_id = c.get_string("run.corpus_id", "");
    const long long seed = c.get_int("run.seed", 0);
    if (seed < 0) throw ConfigError("run.seed must be >= 0");
    r.seed = static_cast<std::uint64_t>(seed);
    r.failure_budget = static_cast<int>(c.get_int("run.failure_budget", 5));
    r.transcript_log = resolve(base_dir, c.get_string("run.transcript_log", ""));

    r.chat = endpoint(c, "chat", "offline-chat");
    r.judge = endpoint(c, "judge", "offline-judge");
    r.embedding = endpoint(c, "embedding", "offline-embedding");
    r.classifier = endpoint(c, "classifier", "offline-sentence");
    r.score_api = endpoint(c, "score_api", "offline-score");
    const long long dim = c.get_int("embedding.dim", 256);
    if (dim < 1) throw ConfigError("embedding.dim must be >= 1");
    r.embedding_dim = static_cast<std::size_t>(dim);
    const long long budget = c.get_int("embedding.char_budget", 0);
    if (budget < 0) throw ConfigError("embedding.char_budget must be >= 0");
    r.embedding_char_budget = static_cast<std::size_t>(budget);

    r.format.include_headings = c.get_bool("format.headings", true);
    r.format.itemize_lists = c.get_bool("format.itemize", true);
    if (auto order = c.get_list("format.section_order", {}); !order.empty()) {
      r.format.section_order = order;
    }
    if (auto filter = c.get_list("format.section_filter", {}); !filter.empty()) {
      r.format.section_filter = filter;
    }

    auto papers = c.get_list("generate.papers", {"all"});
    if (!(papers.size() == 1 && util::ascii_lower(papers.front()) == "all")) r.papers = papers;
    if (c.contains("generate.archetypes")) {
      r.archetypes.clear();
      for (const auto& name : c.get_list("generate.archetypes", {})) {
        auto a = corpus::parse_archetype(name);
        if (!a) throw ConfigError("unknown archetype '" + name + "'");
        r.archetypes.push_back(*a);
      }
    }
    r.guideline_file = resolve(base_dir, c.get_string("generate.guideline_file", ""));

    r.detectors = c.get_list("detect.detectors", r.detectors);
    for (auto& d : r.detectors) d = util::ascii_lower(d);
    r.include_generated = c.get_bool("detect.include_generated", false);

    r.anchor.n = static_cast<int>(c.get_int("anchor.n", 1));
    r.anchor.aggregation = detectors::parse_aggregation(c.get_string("anchor.aggregation", "max"));
    r.anchor.prompt_version =
        c.get_string("anchor.prompt_version", std::string(llm::kAnchorPromptVersion));

    r.fpr_levels = parse_doubles("evaluate.fpr_levels",
                                 c.get_list("evaluate.fpr_levels", {"0.05", "0.20"}));
    r.target_fpr = c.get_double("calibrate.target_fpr", 0.05);
    r.k = static_cast<int>(c.get_int("calibrate.k", 5));
    r.section_breakdown = c.get_list("evaluate.sections", {});
    r.ablation_detector = util::ascii_lower(c.get_string("evaluate.ablation_detector", ""));
    r.report_formats = c.get_list("report.formats", r.report_formats);
    for (auto& f : r.report_formats) f = util::ascii_lower(f);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return r;
}

void RunConfig::validate(bool check_corpus_path) const {
  if (check_corpus_path) {
    if (corpus.empty()) throw ConfigError("no corpus file given (run.corpus or --in)");
    if (!std::filesystem::is_regular_file(corpus)) {
      throw ConfigError("corpus file not found: " + corpus.string());
    }
  }
  if (output_dir.empty()) throw ConfigError("no output directory given (run.output or --out)");
  if (!guideline_file.empty() && !std::filesystem::is_regular_file(guideline_file)) {
    throw ConfigError("guideline file not found: " + guideline_file.string());
  }
  validate_endpoint(chat, "chat");
  validate_endpoint(judge, "judge");
  validate_endpoint(embedding, "embedding");
  validate_endpoint(classifier, "classifier");
  validate_endpoint(score_api, "score_api");
  if (archetypes.empty()) throw ConfigError("generate.archetypes must not be empty");
  if (detectors.empty()) throw ConfigError("detect.detectors must not be empty");
  for (const auto& d : detectors) {
    if (std::find(known_detectors().begin(), known_detectors().end(), d) ==
        known_detectors().end()) {
      throw ConfigError("unknown detector '" + d + "' (expected anchor, judge, classifier, api)");
    }
  }
  if (!ablation_detector.empty() &&
      std::find(detectors.begin(), detectors.end(), ablation_detector) == detectors.end()) {
    throw ConfigError("evaluate.ablation_detector '" + ablation_detector +
                      "' is not among detect.detectors");
  }
  if (anchor.n < 1) throw ConfigError("anchor.n must be >= 1");
  if (anchor.prompt_version != llm::kAnchorPromptVersion) {
    throw ConfigError("anchor.prompt_version '" + anchor.prompt_version +
                      "' is not available; this build provides " +
                      std::string(llm::kAnchorPromptVersion));
  }
  if (fpr_levels.empty()) throw ConfigError("evaluate.fpr_levels must not be empty");
  for (double level : fpr_levels) {
    if (!(level > 0.0 && level < 1.0)) {
      throw ConfigError("every FPR level must lie in (0, 1), got " + util::fixed(level, 4));
    }
  }
  if (!(target_fpr > 0.0 && target_fpr < 1.0)) {
    throw ConfigError("calibrate.target_fpr must lie in (0, 1)");
  }
  if (k < 2) throw ConfigError("calibrate.k must be >= 2");
  if (failure_budget < 0) throw ConfigError("run.failure_budget must be >= 0");
  for (const auto& f : report_formats) {
    if (f != "csv" && f != "md" && f != "svg") {
      throw ConfigError("unknown report format '" + f + "' (expected csv, md, svg)");
    }
  }
}

std::string describe_config(const util::KeyValueConfig& config) {
  std::ostringstream out;
  for (const auto& [key, value] : config.values()) out << key << " = " << value << "\n";
  return out.str();
}

}  // namespace revdetect::cli
