#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "revdetect/corpus/model.hpp"
#include "revdetect/corpus/text.hpp"
#include "revdetect/detectors/detector.hpp"
#include "revdetect/metrics/metrics.hpp"

namespace revdetect::reporting {

// Provenance carried in a comment header by every report file. Contains no
// wall-clock time so reruns stay byte-identical.
struct ReportMetadata {
  std::string corpus_id;
  std::string format_config;
  std::vector<std::string> prompt_versions;
  std::vector<std::string> detector_ids;

  std::vector<std::string> lines() const;
};

// Scores of one detector: human reviews plus one list per AI generator.
struct DetectorScoreSet {
  std::string detector_id;
  bool binary_only = false;
  std::vector<double> negatives;
  std::map<std::string, std::vector<double>> positives;
};

struct ReportRow {
  std::string detector_id;
  std::string positive_set;
  double target_fpr = 0.0;
  double tpr = 0.0;
  double achieved_fpr = 0.0;
  std::optional<double> threshold;  // empty for fixed operating points
  bool fixed_operating_point = false;
};

struct EvaluationReport {
  std::vector<ReportRow> rows;
  ReportMetadata metadata;
  std::vector<double> fpr_levels;
  std::vector<std::string> positive_sets;

  // Throws InvalidArgument on a repeated (detector, positive set, level).
  void validate() const;
};

// Binary-only detectors flag a review as AI at this score.
inline constexpr double kBinaryDecisionThreshold = 0.5;

// One row per (detector, positive set, FPR level). Calibrated detectors use
// tpr_at_fpr; binary-only detectors report their single native operating
// point at every level, flagged as fixed. Throws InvalidArgument for empty
// inputs or levels outside (0, 1).
EvaluationReport tpr_table(std::span<const DetectorScoreSet> score_sets,
                           std::span<const double> fpr_levels, ReportMetadata metadata);

// Long form: detector_id,positive_set,target_fpr,tpr,achieved_fpr,threshold,operating_point
std::string render_csv(const EvaluationReport& report);
// Table with one row per detector and one column per (level, positive set);
// "-" marks cells with no data.
std::string render_markdown(const EvaluationReport& report);

std::string roc_csv(const metrics::RocCurve& curve, const ReportMetadata& metadata);
std::string roc_svg(const std::map<std::string, metrics::RocCurve>& curves,
                    const ReportMetadata& metadata, std::string_view title);

// Writes roc_<detector>.csv per curve plus roc.svg. Returns the written paths.
// Throws InvalidArgument for an empty map and IoError when the directory is
// not writable.
std::vector<std::filesystem::path> roc_export(
    const std::map<std::string, metrics::RocCurve>& curves,
    const std::filesystem::path& out_dir, const ReportMetadata& metadata);

// Fraction of scores >= threshold in each group. Throws InvalidArgument for an
// empty group or no groups.
std::map<int, double> flagged_proportion(
    const std::map<int, std::vector<detectors::DetectionScore>>& by_year, double threshold);

struct SectionRow {
  std::string section;
  std::optional<double> tpr;  // empty when no AI review has the section
  std::optional<double> tnr;  // empty when no human review has the section
  std::size_t ai_reviews = 0;
  std::size_t human_reviews = 0;
};

// Runs the detector on each review restricted to one section at a time.
// Decisions come from the detector when it sets one, else from `threshold`.
// Throws InvalidArgument for a section that no review contains.
std::vector<SectionRow> section_breakdown(std::span<const corpus::Review> reviews,
                                          detectors::Detector& detector,
                                          std::span<const std::string> sections,
                                          const corpus::FormatConfig& base, double threshold);

std::string render_section_markdown(std::span<const SectionRow> rows,
                                    const ReportMetadata& metadata);

// Correct-classification rate per review source under each named
// FormatConfig: TNR for human reviews, TPR for each AI generator.
struct AblationTable {
  std::vector<std::string> columns;  // FormatConfig labels
  std::vector<std::string> sources;  // "human", then generators
  std::map<std::pair<std::string, std::string>, double> rates;  // (source, column)
};

AblationTable formatting_ablation(
    std::span<const corpus::Review> reviews, detectors::Detector& detector,
    std::span<const std::pair<std::string, corpus::FormatConfig>> configs, double threshold);

std::string render_ablation_markdown(const AblationTable& table, const ReportMetadata& metadata);

}  // namespace revdetect::reporting
