#pragma once

#include <string>

#include "revdetect/detectors/score.hpp"

namespace revdetect::detectors {

struct DetectionInput {
  std::string review_id;
  std::string paper_id;
  std::string text;  // format_review output under the run's FormatConfig
};

// Common interface over the four detector families. Implementations are
// stateless apart from their providers and may be called concurrently.
class Detector {
 public:
  virtual ~Detector() = default;
  // Stable id: anchor:<model>:<prompt-version>, judge:<model>,
  // classifier:<scorer-id> or api:<provider>.
  virtual std::string id() const = 0;
  // True for detectors that emit only a decision (LLM judges).
  virtual bool binary_only() const { return false; }
  virtual DetectionScore detect(const DetectionInput& input) = 0;
};

}  // namespace revdetect::detectors
