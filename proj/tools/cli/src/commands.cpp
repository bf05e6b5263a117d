#include "revdetect/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <ostream>
#include <set>

#include <json.hpp>

#include "revdetect/cli/artifacts.hpp"
#include "revdetect/cli/errors.hpp"
#include "revdetect/corpus/ingest.hpp"
#include "revdetect/detectors/adapters.hpp"
#include "revdetect/detectors/anchor.hpp"
#include "revdetect/llm/generate.hpp"
#include "revdetect/llm/prompts.hpp"
#include "revdetect/metrics/metrics.hpp"
#include "revdetect/reporting/report.hpp"
#include "revdetect/util/fs.hpp"
#include "revdetect/util/parallel.hpp"
#include "revdetect/util/strings.hpp"

namespace revdetect::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

// --- batch execution ---------------------------------------------------------

struct BatchOutcome {
  std::size_t processed = 0;
  std::size_t skipped = 0;
  std::size_t failed = 0;
};

// Runs fn(i) for every item. fn returns false when it reused an existing
// output. Item errors are logged and counted; an authentication failure or a
// failure count above the budget stops the batch with BudgetExceeded.
template <typename Label, typename Fn>
BatchOutcome run_batch(CommandContext& ctx, std::size_t n, int max_in_flight, Label&& label,
                       Fn&& fn) {
  std::atomic<std::size_t> processed{0}, skipped{0}, failed{0};
  std::atomic<bool> stop{false};
  std::string fatal;
  std::mutex mu;
  util::parallel_for(n, max_in_flight, [&](std::size_t i) {
    if (stop) return;
    try {
      if (fn(i)) {
        ++processed;
        if (ctx.verbose) {
          std::lock_guard lock(mu);
          ctx.err << "done: " << label(i) << "\n";
        }
      } else {
        ++skipped;
      }
    } catch (const llm::ProviderError& e) {
      std::lock_guard lock(mu);
      ctx.err << "failed: " << label(i) << ": " << e.what() << "\n";
      if (e.kind() == llm::ProviderErrorKind::Auth) {
        if (fatal.empty()) fatal = std::string("authentication failed: ") + e.what();
        stop = true;
      } else if (++failed > static_cast<std::size_t>(ctx.config.failure_budget)) {
        stop = true;
      }
    } catch (const Error& e) {
      std::lock_guard lock(mu);
      ctx.err << "failed: " << label(i) << ": " << e.what() << "\n";
      if (++failed > static_cast<std::size_t>(ctx.config.failure_budget)) stop = true;
    }
  });
  if (!fatal.empty()) throw BudgetExceeded(fatal);
  if (failed > static_cast<std::size_t>(ctx.config.failure_budget)) {
    throw BudgetExceeded(std::to_string(failed.load()) + " item failures exceed the budget of " +
                         std::to_string(ctx.config.failure_budget));
  }
  return {processed.load(), skipped.load(), failed.load()};
}

void record(CommandContext& ctx, const std::string& prefix, const BatchOutcome& o) {
  ctx.counts[prefix + "_processed"] += static_cast<long long>(o.processed);
  ctx.counts[prefix + "_skipped"] += static_cast<long long>(o.skipped);
  ctx.counts[prefix + "_failed"] += static_cast<long long>(o.failed);
}

// --- shared inputs -----------------------------------------------------------

corpus::Corpus load_corpus(const Workspace& ws) {
  if (!fs::is_regular_file(ws.corpus_file())) {
    throw MissingInput("no ingested corpus in " + ws.root().string() + "; run `ingest` first");
  }
  return corpus::ingest_corpus(ws.corpus_file());
}

std::string corpus_id(const CommandContext& ctx) {
  if (!ctx.config.corpus_id.empty()) return ctx.config.corpus_id;
  return "sha256:" + util::sha256_hex(util::read_file(ctx.workspace.corpus_file())).substr(0, 16);
}

// Corpus reviews, plus generated reviews when the config asks for them.
corpus::Corpus evaluation_corpus(const CommandContext& ctx) {
  corpus::Corpus base = load_corpus(ctx.workspace);
  if (!ctx.config.include_generated) return base;
  if (!fs::is_regular_file(ctx.workspace.generated_file())) {
    throw MissingInput("detect.include_generated is set but no generated reviews exist; run "
                       "`generate` first");
  }
  const std::string text = corpus::serialize_corpus(base) +
                           util::read_file(ctx.workspace.generated_file());
  return corpus::ingest_corpus_text(text, ctx.workspace.generated_file().string());
}

std::vector<std::string> selected_papers(const CommandContext& ctx, const corpus::Corpus& c) {
  std::vector<std::string> ids = ctx.config.papers;
  if (ids.empty()) {
    for (const auto& [id, _] : c.papers()) ids.push_back(id);
  }
  for (const auto& id : ids) {
    if (!c.find_paper(id)) throw ConfigError("unknown paper id '" + id + "'");
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

std::shared_ptr<embeddings::Embedder> make_embedder(CommandContext& ctx) {
  auto provider = ctx.providers.embedding(ctx.config.embedding, ctx.config.embedding_dim);
  auto cache = std::make_shared<embeddings::EmbeddingCache>(ctx.workspace.embedding_cache_dir());
  return std::make_shared<embeddings::Embedder>(std::move(provider), std::move(cache),
                                                ctx.config.embedding_char_budget);
}

fs::path anchor_file(const Workspace& ws, const std::string& paper_id) {
  return ws.anchors_dir() / (util::slug(paper_id) + ".json");
}

struct LiveDetector {
  std::shared_ptr<detectors::Detector> detector;
  int max_in_flight = 1;
};

LiveDetector make_detector(CommandContext& ctx, const std::string& name,
                           const corpus::Corpus& corpus) {
  const RunConfig& cfg = ctx.config;
  if (name == "anchor") {
    std::set<std::string> papers;
    for (const auto& [_, r] : corpus.reviews()) papers.insert(r.paper_id);
    std::map<std::string, detectors::AnchorSet> sets;
    for (const auto& paper : papers) {
      const fs::path file = anchor_file(ctx.workspace, paper);
      if (!fs::is_regular_file(file)) {
        throw MissingInput("no anchors for paper '" + paper + "'; run `anchor` first");
      }
      sets.emplace(paper, detectors::load_anchor_set(file));
    }
    return {std::make_shared<detectors::AnchorDetector>(std::move(sets), make_embedder(ctx),
                                                        cfg.anchor.aggregation),
            cfg.embedding.max_in_flight};
  }
  if (name == "judge") {
    return {std::make_shared<detectors::JudgeDetector>(ctx.providers.chat(cfg.judge)),
            cfg.judge.max_in_flight};
  }
  if (name == "classifier") {
    return {std::make_shared<detectors::ClassifierDetector>(
                ctx.providers.sentence_scorer(cfg.classifier)),
            cfg.classifier.max_in_flight};
  }
  if (name == "api") {
    return {std::make_shared<detectors::ExternalApiDetector>(ctx.providers.score_api(cfg.score_api)),
            cfg.score_api.max_in_flight};
  }
  throw ConfigError("unknown detector '" + name + "'");
}

std::vector<ScoreIndexEntry> load_index(const Workspace& ws) {
  if (!fs::is_regular_file(ws.score_index())) {
    throw MissingInput("no detection scores in " + ws.root().string() + "; run `detect` first");
  }
  return score_index_from_json(util::read_file(ws.score_index()));
}

const ScoreIndexEntry& index_entry(const std::vector<ScoreIndexEntry>& index,
                                   const std::string& name) {
  for (const auto& e : index) {
    if (e.name == name) return e;
  }
  throw MissingInput("no scores for detector '" + name + "'; run `detect` first");
}

std::map<std::string, detectors::DetectionScore> load_scores(const Workspace& ws,
                                                             const ScoreIndexEntry& entry) {
  const fs::path file = ws.scores_dir() / entry.file;
  if (!fs::is_regular_file(file)) throw MissingInput("score file missing: " + file.string());
  std::map<std::string, detectors::DetectionScore> out;
  for (const auto& line : util::split(util::read_file(file), '\n')) {
    if (util::trim(line).empty()) continue;
    auto score = detectors::from_jsonl(line);
    out.emplace(score.review_id, std::move(score));
  }
  return out;
}

fs::path calibration_file(const Workspace& ws, const std::string& detector_id) {
  return ws.calibration_dir() / (util::slug(detector_id) + ".json");
}

// Decision threshold for a detector: the calibrated mean threshold, or the
// fixed binary threshold for judge-style detectors.
std::optional<double> decision_threshold(const Workspace& ws, const ScoreIndexEntry& entry) {
  if (entry.binary_only) return reporting::kBinaryDecisionThreshold;
  const fs::path file = calibration_file(ws, entry.detector_id);
  if (!fs::is_regular_file(file)) return std::nullopt;
  return json::parse(util::read_file(file)).at("threshold_mean").get<double>();
}

std::vector<std::string> prompt_versions(const std::vector<std::string>& detector_names) {
  std::vector<std::string> out;
  for (const auto& name : detector_names) {
    if (name == "anchor") out.push_back("anchor:" + std::string(llm::kAnchorPromptVersion));
    if (name == "judge") {
      out.push_back("judge:sha256:" +
                    util::sha256_hex(llm::judge_system_prompt()).substr(0, 12));
    }
  }
  return out;
}

std::vector<corpus::Review> review_list(const corpus::Corpus& c) {
  std::vector<corpus::Review> out;
  for (const auto& [_, r] : c.reviews()) out.push_back(r);
  return out;
}

}  // namespace

// --- ingest ------------------------------------------------------------------

int cmd_ingest(CommandContext& ctx) {
  ctx.config.validate(true);
  const corpus::Corpus c = corpus::ingest_corpus(ctx.config.corpus);
  const std::string text = corpus::serialize_corpus(c);
  const fs::path target = ctx.workspace.corpus_file();
  if (fs::is_regular_file(target) && !ctx.force) {
    if (util::read_file(target) != text) {
      throw ConfigError("output directory already holds a different corpus; use --force to "
                        "replace it");
    }
    ctx.out << "corpus unchanged: " << target.string() << "\n";
  } else {
    util::write_file_atomic(target, text);
    ctx.out << "wrote " << target.string() << "\n";
  }
  ctx.counts["papers"] = static_cast<long long>(c.papers().size());
  ctx.counts["reviews"] = static_cast<long long>(c.reviews().size());
  ctx.out << c.papers().size() << " papers, " << c.reviews().size() << " reviews\n";
  return kExitOk;
}

// --- generate ----------------------------------------------------------------

int cmd_generate(CommandContext& ctx) {
  ctx.config.validate(false);
  const RunConfig& cfg = ctx.config;
  const corpus::Corpus c = load_corpus(ctx.workspace);
  const auto papers = selected_papers(ctx, c);
  const fs::path items = ctx.workspace.generated_dir() / "items";
  const auto item_file = [&](const std::string& paper, corpus::Archetype a) {
    return items / (util::slug(llm::generated_review_id(paper, cfg.chat.model_ref, a)) + ".jsonl");
  };

  // Group pending papers by the archetypes they still lack.
  std::map<std::vector<corpus::Archetype>, std::vector<std::string>> pending;
  std::size_t skipped = 0;
  for (const auto& paper : papers) {
    std::vector<corpus::Archetype> missing;
    for (auto a : cfg.archetypes) {
      if (ctx.force || !fs::is_regular_file(item_file(paper, a))) {
        missing.push_back(a);
      } else {
        ++skipped;
      }
    }
    if (!missing.empty()) pending[missing].push_back(paper);
  }

  llm::GenerationOptions options;
  if (!cfg.guideline_file.empty()) options.guideline = util::read_file(cfg.guideline_file);
  options.max_in_flight = cfg.chat.max_in_flight;
  auto model = ctx.providers.chat(cfg.chat);

  std::vector<llm::GenerationFailure> failures;
  std::size_t produced = 0;
  for (const auto& [archetypes, ids] : pending) {
    auto result = llm::generate_reviews(c, ids, archetypes, *model, options);
    for (const auto& review : result.reviews) {
      const auto& source = std::get<corpus::AiSource>(review.source);
      util::write_file_atomic(item_file(review.paper_id, *source.archetype),
                              corpus::serialize_review_record(review) + "\n");
      ++produced;
    }
    failures.insert(failures.end(), result.failures.begin(), result.failures.end());
  }

  json failure_log = json::array();
  bool auth_failure = false;
  for (const auto& f : failures) {
    ctx.err << "failed: " << f.paper_id << "/" << corpus::to_string(f.archetype) << ": "
            << f.message << "\n";
    auth_failure = auth_failure || f.provider_error == llm::ProviderErrorKind::Auth;
    failure_log.push_back({{"paper_id", f.paper_id},
                           {"archetype", std::string(corpus::to_string(f.archetype))},
                           {"message", f.message}});
  }
  util::write_file_atomic(ctx.workspace.generated_dir() / "failures.json",
                          failure_log.dump(2) + "\n");

  // Rebuild the combined file from every item on disk, in id order.
  std::vector<fs::path> files;
  if (fs::is_directory(items)) {
    for (const auto& entry : fs::directory_iterator(items)) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::string combined;
  for (const auto& f : files) combined += util::read_file(f);
  util::write_file_atomic(ctx.workspace.generated_file(), combined);

  ctx.counts["generated"] = static_cast<long long>(produced);
  ctx.counts["skipped"] = static_cast<long long>(skipped);
  ctx.counts["failed"] = static_cast<long long>(failures.size());
  ctx.out << "generated " << produced << " reviews (" << skipped << " reused, "
          << failures.size() << " failed)\n";
  if (auth_failure) throw BudgetExceeded("authentication failed for the chat provider");
  if (failures.size() > static_cast<std::size_t>(cfg.failure_budget)) {
    throw BudgetExceeded(std::to_string(failures.size()) + " generation failures exceed the "
                         "budget of " + std::to_string(cfg.failure_budget));
  }
  return failures.empty() ? kExitOk : kExitPartial;
}

// --- anchor ------------------------------------------------------------------

int cmd_anchor(CommandContext& ctx) {
  ctx.config.validate(false);
  const RunConfig& cfg = ctx.config;
  const corpus::Corpus c = load_corpus(ctx.workspace);
  const auto papers = selected_papers(ctx, c);
  auto model = ctx.providers.chat(cfg.chat);
  auto embedder = make_embedder(ctx);

  const auto reusable = [&](const fs::path& file) {
    if (ctx.force || !fs::is_regular_file(file)) return false;
    try {
      const auto set = detectors::load_anchor_set(file);
      return set.anchors.size() == static_cast<std::size_t>(cfg.anchor.n) &&
             set.generator_model == cfg.chat.model_ref &&
             set.prompt_version == cfg.anchor.prompt_version &&
             set.anchors.front().vector.model_ref() == embedder->model_ref();
    } catch (const Error&) {
      return false;
    }
  };

  const auto outcome = run_batch(
      ctx, papers.size(), cfg.chat.max_in_flight, [&](std::size_t i) { return papers[i]; },
      [&](std::size_t i) {
        const fs::path file = anchor_file(ctx.workspace, papers[i]);
        if (reusable(file)) return false;
        auto set = detectors::build_anchors(*c.find_paper(papers[i]), cfg.anchor.n, *model,
                                            *embedder);
        detectors::save_anchor_set(set, file);
        return true;
      });
  record(ctx, "anchor_sets", outcome);
  ctx.out << "anchor sets: " << outcome.processed << " built, " << outcome.skipped << " reused, "
          << outcome.failed << " failed\n";
  return outcome.failed == 0 ? kExitOk : kExitPartial;
}

// --- detect ------------------------------------------------------------------

int cmd_detect(CommandContext& ctx) {
  ctx.config.validate(false);
  const RunConfig& cfg = ctx.config;
  const corpus::Corpus c = evaluation_corpus(ctx);
  try {
    cfg.format.validate(c.section_names());
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  const auto reviews = review_list(c);

  std::vector<ScoreIndexEntry> index;
  if (fs::is_regular_file(ctx.workspace.score_index())) {
    index = score_index_from_json(util::read_file(ctx.workspace.score_index()));
  }

  std::size_t failed_total = 0;
  for (const auto& name : cfg.detectors) {
    auto live = make_detector(ctx, name, c);
    const std::string id = live.detector->id();
    const fs::path item_dir = ctx.workspace.scores_dir() / util::slug(id);
    const auto item_file = [&](const corpus::Review& r) {
      return item_dir / (util::slug(r.id) + ".json");
    };

    const auto outcome = run_batch(
        ctx, reviews.size(), live.max_in_flight,
        [&](std::size_t i) { return id + " " + reviews[i].id; },
        [&](std::size_t i) {
          const auto& review = reviews[i];
          const fs::path file = item_file(review);
          if (!ctx.force && fs::is_regular_file(file)) return false;
          const std::string text = corpus::format_review(review, cfg.format);
          auto score = live.detector->detect({review.id, review.paper_id, text});
          score.validate();
          util::write_file_atomic(file, detectors::to_jsonl(score) + "\n");
          return true;
        });
    record(ctx, util::slug(id), outcome);
    failed_total += outcome.failed;

    std::string combined;
    for (const auto& review : reviews) {
      const fs::path file = item_file(review);
      if (fs::is_regular_file(file)) combined += util::read_file(file);
    }
    const std::string file_name = util::slug(id) + ".jsonl";
    util::write_file_atomic(ctx.workspace.scores_dir() / file_name, combined);

    std::erase_if(index, [&](const ScoreIndexEntry& e) { return e.name == name; });
    index.push_back({name, id, live.detector->binary_only(), file_name});
    ctx.out << id << ": " << outcome.processed << " scored, " << outcome.skipped << " reused, "
            << outcome.failed << " failed\n";
  }
  std::sort(index.begin(), index.end(),
            [](const auto& a, const auto& b) { return a.name < b.name; });
  util::write_file_atomic(ctx.workspace.score_index(), score_index_to_json(index));
  return failed_total == 0 ? kExitOk : kExitPartial;
}

// --- calibrate ---------------------------------------------------------------

int cmd_calibrate(CommandContext& ctx) {
  ctx.config.validate(false);
  const RunConfig& cfg = ctx.config;
  const corpus::Corpus c = evaluation_corpus(ctx);
  const auto index = load_index(ctx.workspace);

  for (const auto& name : cfg.detectors) {
    const auto& entry = index_entry(index, name);
    if (entry.binary_only) {
      ctx.out << entry.detector_id << ": binary decisions, nothing to calibrate\n";
      continue;
    }
    const auto scores = load_scores(ctx.workspace, entry);
    std::vector<double> negatives;
    for (const auto& [id, review] : c.reviews()) {
      if (review.label() != Label::Human) continue;
      if (auto it = scores.find(id); it != scores.end()) negatives.push_back(it->second.score);
    }
    if (negatives.size() < static_cast<std::size_t>(cfg.k)) {
      throw ConfigError(entry.detector_id + ": " + std::to_string(negatives.size()) +
                        " human-review scores cannot be split into " + std::to_string(cfg.k) +
                        " folds");
    }
    const auto result = metrics::kfold_calibrate(negatives, cfg.target_fpr, cfg.k, cfg.seed);
    json out{{"detector_id", entry.detector_id}, {"negatives", negatives.size()}};
    out.update(json::parse(metrics::calibration_to_json(result)));
    util::write_file_atomic(calibration_file(ctx.workspace, entry.detector_id),
                            out.dump(2) + "\n");
    ctx.counts[util::slug(entry.detector_id) + "_negatives"] =
        static_cast<long long>(negatives.size());
    ctx.out << entry.detector_id << ": threshold " << util::fixed(result.threshold_mean, 4)
            << " +- " << util::fixed(result.threshold_std, 4) << ", held-out FPR "
            << util::fixed(result.actual_fpr_mean, 4) << " +- "
            << util::fixed(result.actual_fpr_std, 4) << " (target "
            << util::fixed(cfg.target_fpr, 4) << ", k=" << cfg.k << ")\n";
  }
  return kExitOk;
}

// --- evaluate ----------------------------------------------------------------

int cmd_evaluate(CommandContext& ctx) {
  ctx.config.validate(false);
  const RunConfig& cfg = ctx.config;
  const corpus::Corpus c = evaluation_corpus(ctx);
  const auto index = load_index(ctx.workspace);

  EvaluationArtifacts artifacts;
  std::vector<reporting::DetectorScoreSet> sets;
  std::vector<std::string> detector_ids;
  std::map<std::string, std::optional<double>> thresholds;
  std::size_t unscored = 0;
  for (const auto& name : cfg.detectors) {
    const auto& entry = index_entry(index, name);
    const auto scores = load_scores(ctx.workspace, entry);
    reporting::DetectorScoreSet set;
    set.detector_id = entry.detector_id;
    set.binary_only = entry.binary_only;
    std::map<int, std::vector<detectors::DetectionScore>> by_year;
    for (const auto& [id, review] : c.reviews()) {
      auto it = scores.find(id);
      if (it == scores.end()) {
        ++unscored;
        continue;
      }
      if (review.label() == Label::Human) {
        set.negatives.push_back(it->second.score);
      } else {
        set.positives[review.source_tag()].push_back(it->second.score);
      }
      by_year[review.venue_year].push_back(it->second);
    }
    detector_ids.push_back(entry.detector_id);

    const auto threshold = decision_threshold(ctx.workspace, entry);
    thresholds[name] = threshold;
    if (threshold) {
      artifacts.flagged.push_back(
          {entry.detector_id, *threshold, reporting::flagged_proportion(by_year, *threshold)});
    }
    if (!entry.binary_only && !set.negatives.empty()) {
      for (const auto& [positive_set, positives] : set.positives) {
        artifacts.roc.push_back(
            {entry.detector_id, positive_set, metrics::roc_curve({positives, set.negatives})});
      }
    }
    sets.push_back(std::move(set));
  }
  if (unscored > 0) {
    ctx.err << "warning: " << unscored << " (detector, review) pairs have no score\n";
  }

  reporting::ReportMetadata metadata{corpus_id(ctx), cfg.format.describe(),
                                     prompt_versions(cfg.detectors), detector_ids};
  artifacts.table = reporting::tpr_table(sets, cfg.fpr_levels, metadata);

  const auto live_threshold = [&](const std::string& name) {
    const auto& t = thresholds.at(name);
    if (!t) {
      throw MissingInput("detector '" + name + "' has no calibrated threshold; run `calibrate` "
                         "first");
    }
    return *t;
  };
  const auto reviews = review_list(c);

  if (!cfg.section_breakdown.empty()) {
    const std::string name =
        cfg.ablation_detector.empty() ? cfg.detectors.front() : cfg.ablation_detector;
    const double threshold = live_threshold(name);
    auto live = make_detector(ctx, name, c);
    artifacts.section_detector_id = live.detector->id();
    artifacts.sections = reporting::section_breakdown(reviews, *live.detector,
                                                      cfg.section_breakdown, cfg.format, threshold);
  }
  if (!cfg.ablation_detector.empty()) {
    const double threshold = live_threshold(cfg.ablation_detector);
    auto live = make_detector(ctx, cfg.ablation_detector, c);
    corpus::FormatConfig plain = cfg.format;
    plain.include_headings = false;
    plain.itemize_lists = false;
    const std::vector<std::pair<std::string, corpus::FormatConfig>> configs{
        {"formatted", cfg.format}, {"unformatted", plain}};
    artifacts.ablation_detector_id = live.detector->id();
    artifacts.ablation = reporting::formatting_ablation(reviews, *live.detector, configs, threshold);
  }

  util::write_file_atomic(ctx.workspace.evaluation_file(), evaluation_to_json(artifacts));
  ctx.counts["rows"] = static_cast<long long>(artifacts.table.rows.size());
  ctx.counts["unscored"] = static_cast<long long>(unscored);
  for (const auto& row : artifacts.table.rows) {
    ctx.out << row.detector_id << "  " << row.positive_set << "  FPR "
            << util::fixed(row.target_fpr, 2) << "  TPR " << util::fixed(row.tpr, 4)
            << (row.fixed_operating_point ? "  (fixed operating point, FPR " +
                                                util::fixed(row.achieved_fpr, 4) + ")"
                                          : "")
            << "\n";
  }
  ctx.out << "wrote " << ctx.workspace.evaluation_file().string() << " ("
          << artifacts.table.rows.size() << " rows)\n";
  return kExitOk;
}

// --- report ------------------------------------------------------------------

int cmd_report(CommandContext& ctx) {
  ctx.config.validate(false);
  const RunConfig& cfg = ctx.config;
  const fs::path source = ctx.workspace.evaluation_file();
  if (!fs::is_regular_file(source)) {
    throw MissingInput("no evaluation results in " + ctx.workspace.root().string() +
                       "; run `evaluate` first");
  }
  const auto a = evaluation_from_json(util::read_file(source));
  const auto& metadata = a.table.metadata;
  const fs::path dir = ctx.workspace.report_dir();
  const auto wants = [&](const char* format) {
    return std::find(cfg.report_formats.begin(), cfg.report_formats.end(), format) !=
           cfg.report_formats.end();
  };
  std::vector<fs::path> written;
  const auto emit = [&](const fs::path& path, const std::string& text) {
    util::write_file_atomic(path, text);
    written.push_back(path);
  };

  if (wants("csv")) {
    emit(dir / "table.csv", reporting::render_csv(a.table));
    for (const auto& e : a.roc) {
      emit(dir / ("roc_" + util::slug(e.detector_id) + "__" + util::slug(e.positive_set) + ".csv"),
           reporting::roc_csv(e.curve, metadata));
    }
    if (!a.flagged.empty()) {
      std::string csv;
      for (const auto& line : metadata.lines()) csv += "# " + line + "\n";
      csv += "detector_id,year,threshold,flagged_share\n";
      for (const auto& f : a.flagged) {
        for (const auto& [year, share] : f.by_year) {
          csv += f.detector_id + "," + std::to_string(year) + "," + util::fixed(f.threshold, 4) +
                 "," + util::fixed(share, 4) + "\n";
        }
      }
      emit(dir / "flagged.csv", csv);
    }
  }
  if (wants("md")) {
    emit(dir / "table.md", reporting::render_markdown(a.table));
    if (!a.sections.empty()) {
      emit(dir / "sections.md", "Detector: " + a.section_detector_id + "\n\n" +
                                    reporting::render_section_markdown(a.sections, metadata));
    }
    if (a.ablation) {
      emit(dir / "ablation.md", "Detector: " + a.ablation_detector_id + "\n\n" +
                                    reporting::render_ablation_markdown(*a.ablation, metadata));
    }
  }
  if (wants("svg")) {
    std::map<std::string, std::map<std::string, metrics::RocCurve>> by_set;
    for (const auto& e : a.roc) by_set[e.positive_set][e.detector_id] = e.curve;
    for (const auto& [positive_set, curves] : by_set) {
      emit(dir / ("roc_" + util::slug(positive_set) + ".svg"),
           reporting::roc_svg(curves, metadata, "ROC, " + positive_set + " reviews vs human"));
    }
  }
  ctx.counts["files"] = static_cast<long long>(written.size());
  for (const auto& p : written) ctx.out << "wrote " << p.string() << "\n";
  return kExitOk;
}

}  // namespace revdetect::cli
