#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "revdetect/corpus/model.hpp"

namespace revdetect::corpus {

inline constexpr std::string_view kCorpusSchemaVersion = "1";

// Manuscript sections dropped from paper bodies during ingestion.
std::vector<std::string> default_excluded_sections();

struct IngestOptions {
  std::string schema_version{kCorpusSchemaVersion};
  std::vector<std::string> excluded_sections = default_excluded_sections();
};

// Reads line-delimited JSON corpus records. Blank lines are skipped. Throws
// CorpusError naming the offending line or id.
Corpus ingest_corpus(const std::filesystem::path& path,
                     const IngestOptions& options = {});
Corpus ingest_corpus_text(std::string_view jsonl, std::string source_name,
                          const IngestOptions& options = {});

// One record per line: papers first, then reviews, each ordered by id.
std::string serialize_corpus(const Corpus& corpus);
std::string serialize_review_record(const Review& review);
std::string serialize_paper_record(const Paper& paper);

}  // namespace revdetect::corpus
