#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "revdetect/label.hpp"

namespace revdetect::detectors {

// One detector's output for one review. `score` is on the unified scale:
// [0, 1], higher means more AI-like.
struct DetectionScore {
  std::string review_id;
  std::string detector_id;
  double raw = 0.0;
  double score = 0.0;
  std::optional<Label> decision;
  std::optional<std::string> rationale;
  std::optional<std::vector<std::string>> anchor_ids;

  // Throws InvalidArgument if score is outside [0, 1] or raw is not finite.
  void validate() const;

  friend bool operator==(const DetectionScore&, const DetectionScore&) = default;
};

// AI iff score >= threshold. Throws InvalidArgument when the threshold is
// outside [0, 1].
Label classify(double score, double threshold);
Label classify(const DetectionScore& score, double threshold);

// One JSON object per line.
std::string to_jsonl(const DetectionScore& score);
DetectionScore from_jsonl(std::string_view line);

}  // namespace revdetect::detectors
