#pragma once

#include <cstdint>
#include <iterator>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "revdetect/corpus/model.hpp"
#include "revdetect/corpus/text.hpp"
#include "revdetect/detectors/anchor.hpp"
#include "revdetect/llm/provider.hpp"
#include "revdetect/util/config.hpp"

namespace revdetect::cli {

struct AnchorSettings {
  int n = 1;
  detectors::Aggregation aggregation = detectors::Aggregation::Max;
  std::string prompt_version;
};

// Everything one pipeline run needs. Built from the INI config file with
// command-line overrides applied on top.
struct RunConfig {
  std::filesystem::path corpus;      // raw JSONL read by `ingest`
  std::filesystem::path output_dir;  // every command writes only below here
  std::string corpus_id;             // empty: derived from the ingested corpus

  llm::EndpointConfig chat;        // generation and anchor model
  llm::EndpointConfig judge;
  llm::EndpointConfig embedding;
  llm::EndpointConfig classifier;  // per-sentence scorer
  llm::EndpointConfig score_api;
  std::size_t embedding_dim = 256;         // offline embedder only
  std::size_t embedding_char_budget = 0;   // 0: no truncation
  std::filesystem::path transcript_log;    // empty: chat transcripts not kept

  corpus::FormatConfig format;

  std::vector<std::string> papers;  // empty: all papers
  std::vector<corpus::Archetype> archetypes{std::begin(corpus::kAllArchetypes),
                                            std::end(corpus::kAllArchetypes)};
  std::filesystem::path guideline_file;  // empty: bundled guideline

  std::vector<std::string> detectors{"anchor", "judge"};
  bool include_generated = false;  // score generated reviews next to the corpus
  AnchorSettings anchor;

  std::vector<double> fpr_levels{0.05, 0.20};
  double target_fpr = 0.05;
  int k = 5;
  std::uint64_t seed = 0;

  std::vector<std::string> report_formats{"csv", "md", "svg"};
  std::vector<std::string> section_breakdown;  // sections scored one at a time
  std::string ablation_detector;               // empty: no formatting ablation

  int failure_budget = 5;  // item failures tolerated before a command aborts

  // Throws ConfigError. The corpus path is only checked on request, since only
  // `ingest` reads it.
  void validate(bool check_corpus_path) const;
};

inline const std::vector<std::string>& known_detectors() {
  static const std::vector<std::string> names{"anchor", "judge", "classifier", "api"};
  return names;
}

// Relative paths in `config` resolve against `base_dir`. Throws ConfigError
// for malformed values.
RunConfig run_config_from(const util::KeyValueConfig& config,
                          const std::filesystem::path& base_dir);

// Canonical text form of the effective configuration, used for run metadata.
std::string describe_config(const util::KeyValueConfig& config);

}  // namespace revdetect::cli
