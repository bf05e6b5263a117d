#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "revdetect/metrics/metrics.hpp"
#include "revdetect/reporting/report.hpp"

namespace revdetect::cli {

// One detector scored by `detect`.
struct ScoreIndexEntry {
  std::string name;         // selection name: anchor, judge, classifier, api
  std::string detector_id;
  bool binary_only = false;
  std::string file;         // relative to the scores directory
};

std::string score_index_to_json(const std::vector<ScoreIndexEntry>& entries);
std::vector<ScoreIndexEntry> score_index_from_json(std::string_view text);

struct RocEntry {
  std::string detector_id;
  std::string positive_set;
  metrics::RocCurve curve;
};

struct FlaggedEntry {
  std::string detector_id;
  double threshold = 0.0;
  std::map<int, double> by_year;
};

// Everything `evaluate` computes and `report` renders.
struct EvaluationArtifacts {
  reporting::EvaluationReport table;
  std::vector<RocEntry> roc;
  std::string section_detector_id;
  std::vector<reporting::SectionRow> sections;
  std::string ablation_detector_id;
  std::optional<reporting::AblationTable> ablation;
  std::vector<FlaggedEntry> flagged;
};

std::string evaluation_to_json(const EvaluationArtifacts& artifacts);
// Throws ParseError.
EvaluationArtifacts evaluation_from_json(std::string_view text);

}  // namespace revdetect::cli
