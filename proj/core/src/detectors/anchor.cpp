#include "revdetect/detectors/anchor.hpp"

#include <algorithm>

#include <json.hpp>

#include "revdetect/error.hpp"
#include "revdetect/llm/prompts.hpp"
#include "revdetect/util/fs.hpp"
#include "revdetect/util/strings.hpp"

namespace revdetect::detectors {

using json = nlohmann::json;

void AnchorSet::validate() const {
  if (anchors.empty()) throw InvalidArgument("anchor set for '" + paper_id + "' is empty");
  const std::size_t dim = anchors.front().vector.dim();
  for (const auto& a : anchors) {
    if (a.vector.dim() != dim) {
      throw InvalidArgument("anchor set for '" + paper_id + "' mixes embedding dims");
    }
  }
}

std::vector<std::string> AnchorSet::anchor_ids() const {
  std::vector<std::string> ids;
  ids.reserve(anchors.size());
  for (const auto& a : anchors) ids.push_back(a.id);
  return ids;
}

std::string_view to_string(Aggregation aggregation) {
  return aggregation == Aggregation::Max ? "max" : "mean";
}

Aggregation parse_aggregation(std::string_view name) {
  const std::string lowered = util::ascii_lower(util::trim(name));
  if (lowered == "max") return Aggregation::Max;
  if (lowered == "mean") return Aggregation::Mean;
  throw InvalidArgument("unknown aggregation '" + std::string(name) + "'");
}

AnchorSet build_anchors(const corpus::Paper& paper, int n, llm::ChatModel& model,
                        embeddings::Embedder& embedder) {
  if (n < 1) throw InvalidArgument("anchor count must be at least 1");
  AnchorSet set;
  set.paper_id = paper.id;
  set.generator_model = model.model_ref();
  set.prompt_version = std::string(llm::kAnchorPromptVersion);
  for (int i = 0; i < n; ++i) {
    llm::ChatRequest request = llm::render_anchor_prompt(paper, model.model_ref());
    if (n > 1) request.seed = i;
    std::string text = model.complete(request);
    auto embedded = embedder.embed(text);
    set.anchors.push_back({paper.id + "#anchor" + std::to_string(i), std::move(text),
                           std::move(embedded.vector)});
  }
  set.validate();
  return set;
}

std::string anchor_set_to_json(const AnchorSet& set) {
  nlohmann::ordered_json j;
  j["paper_id"] = set.paper_id;
  j["generator_model"] = set.generator_model;
  j["prompt_version"] = set.prompt_version;
  j["anchors"] = nlohmann::ordered_json::array();
  for (const auto& a : set.anchors) {
    nlohmann::ordered_json ja;
    ja["id"] = a.id;
    ja["text"] = a.text;
    ja["embedding_model"] = a.vector.model_ref();
    ja["values"] = std::vector<double>(a.vector.values().begin(), a.vector.values().end());
    j["anchors"].push_back(std::move(ja));
  }
  return j.dump();
}

AnchorSet anchor_set_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    AnchorSet set;
    set.paper_id = j.at("paper_id").get<std::string>();
    set.generator_model = j.at("generator_model").get<std::string>();
    set.prompt_version = j.at("prompt_version").get<std::string>();
    for (const auto& ja : j.at("anchors")) {
      set.anchors.push_back({ja.at("id").get<std::string>(), ja.at("text").get<std::string>(),
                             embeddings::EmbeddingVector(ja.at("values").get<std::vector<double>>(),
                                                         ja.at("embedding_model").get<std::string>())});
    }
    set.validate();
    return set;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed anchor set: ") + e.what());
  }
}

void save_anchor_set(const AnchorSet& set, const std::filesystem::path& path) {
  util::write_file_atomic(path, anchor_set_to_json(set));
}

AnchorSet load_anchor_set(const std::filesystem::path& path) {
  return anchor_set_from_json(util::read_file(path));
}

DetectionScore anchor_detect(std::string_view review_text, const AnchorSet& anchors,
                             Aggregation aggregation, embeddings::Embedder& embedder) {
  if (util::trim(review_text).empty()) throw InvalidArgument("review text is empty");
  anchors.validate();
  const auto review = embedder.embed(review_text).vector;
  double best = -1.0;
  double sum = 0.0;
  for (const auto& anchor : anchors.anchors) {
    const double s = embeddings::cosine_similarity(review, anchor.vector);
    best = std::max(best, s);
    sum += s;
  }
  DetectionScore out;
  out.detector_id = anchor_detector_id(anchors.generator_model, anchors.prompt_version);
  out.raw = aggregation == Aggregation::Max
                ? best
                : std::clamp(sum / static_cast<double>(anchors.anchors.size()), -1.0, 1.0);
  out.score = embeddings::normalize_similarity(out.raw);
  out.anchor_ids = anchors.anchor_ids();
  return out;
}

std::string anchor_detector_id(std::string_view generator_model,
                               std::string_view prompt_version) {
  return "anchor:" + std::string(generator_model) + ":" + std::string(prompt_version);
}

AnchorDetector::AnchorDetector(std::map<std::string, AnchorSet> anchors_by_paper,
                               std::shared_ptr<embeddings::Embedder> embedder,
                               Aggregation aggregation)
    : anchors_(std::move(anchors_by_paper)),
      embedder_(std::move(embedder)),
      aggregation_(aggregation) {
  if (anchors_.empty()) throw InvalidArgument("anchor detector needs at least one anchor set");
  const auto& first = anchors_.begin()->second;
  id_ = anchor_detector_id(first.generator_model, first.prompt_version);
  for (const auto& [paper, set] : anchors_) {
    set.validate();
    if (anchor_detector_id(set.generator_model, set.prompt_version) != id_) {
      throw InvalidArgument("anchor sets mix generator models or prompt versions");
    }
  }
}

std::string AnchorDetector::id() const { return id_; }

DetectionScore AnchorDetector::detect(const DetectionInput& input) {
  auto it = anchors_.find(input.paper_id);
  if (it == anchors_.end()) {
    throw InvalidArgument("no anchor set for paper '" + input.paper_id + "'");
  }
  DetectionScore out = anchor_detect(input.text, it->second, aggregation_, *embedder_);
  out.review_id = input.review_id;
  return out;
}

}  // namespace revdetect::detectors
