#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "revdetect/corpus/model.hpp"
#include "revdetect/detectors/detector.hpp"
#include "revdetect/embeddings/embedder.hpp"
#include "revdetect/llm/chat.hpp"

namespace revdetect::detectors {

struct Anchor {
  std::string id;
  std::string text;
  embeddings::EmbeddingVector vector;

  friend bool operator==(const Anchor&, const Anchor&) = default;
};

// AI-written reference reviews for one paper.
struct AnchorSet {
  std::string paper_id;
  std::vector<Anchor> anchors;
  std::string generator_model;
  std::string prompt_version;

  // Throws InvalidArgument when empty or when anchor dims differ.
  void validate() const;
  std::vector<std::string> anchor_ids() const;

  friend bool operator==(const AnchorSet&, const AnchorSet&) = default;
};

enum class Aggregation { Max, Mean };

std::string_view to_string(Aggregation aggregation);
Aggregation parse_aggregation(std::string_view name);

// Generates `n` anchor reviews with the canonical anchor prompt and embeds
// each. Any failure fails the whole set.
AnchorSet build_anchors(const corpus::Paper& paper, int n, llm::ChatModel& model,
                        embeddings::Embedder& embedder);

std::string anchor_set_to_json(const AnchorSet& set);
AnchorSet anchor_set_from_json(std::string_view text);
void save_anchor_set(const AnchorSet& set, const std::filesystem::path& path);
AnchorSet load_anchor_set(const std::filesystem::path& path);

// Similarity of the review to the anchors (max or mean of cosine
// similarities) as `raw`, mapped to [0, 1] as `score`. No decision is
// attached.
DetectionScore anchor_detect(std::string_view review_text, const AnchorSet& anchors,
                             Aggregation aggregation, embeddings::Embedder& embedder);

std::string anchor_detector_id(std::string_view generator_model,
                               std::string_view prompt_version);

class AnchorDetector : public Detector {
 public:
  AnchorDetector(std::map<std::string, AnchorSet> anchors_by_paper,
                 std::shared_ptr<embeddings::Embedder> embedder,
                 Aggregation aggregation = Aggregation::Max);

  std::string id() const override;
  // Throws InvalidArgument when the review's paper has no anchor set.
  DetectionScore detect(const DetectionInput& input) override;

 private:
  std::map<std::string, AnchorSet> anchors_;
  std::shared_ptr<embeddings::Embedder> embedder_;
  Aggregation aggregation_;
  std::string id_;
};

}  // namespace revdetect::detectors
