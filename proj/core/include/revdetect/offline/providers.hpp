#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "revdetect/detectors/adapters.hpp"
#include "revdetect/embeddings/embedder.hpp"
#include "revdetect/llm/chat.hpp"

// Deterministic local stand-ins for every remote provider. They need no
// network or credentials, which makes full pipeline runs reproducible.
namespace revdetect::offline {

// Words typical of generated reviews. The offline judge, classifier and
// score API all key on their density.
std::span<const std::string_view> ai_style_lexicon();

// Share of word tokens in `text` that belong to the lexicon, in [0, 1].
double ai_style_density(std::string_view text);

// Answers the three prompt families: a structured review for archetype
// generation prompts, a verdict JSON block for judge prompts, and a plain
// review for anything else (anchor prompts). Output is a pure function of the
// model ref, the request and the seed.
class OfflineChatModel : public llm::ChatModel {
 public:
  explicit OfflineChatModel(std::string model_ref = "offline-chat", std::uint64_t seed = 0);
  std::string complete(const llm::ChatRequest& request) override;
  std::string model_ref() const override { return model_ref_; }

 private:
  std::string model_ref_;
  std::uint64_t seed_;
};

// Feature-hashing bag-of-words embedder: each lowercase word adds +-1 to one
// of `dim` buckets chosen by a 64-bit FNV-1a hash.
class HashingEmbeddingProvider : public embeddings::EmbeddingProvider {
 public:
  explicit HashingEmbeddingProvider(std::size_t dim = 256);
  std::vector<double> embed_raw(const std::string& text) override;
  std::string provider_id() const override { return "offline"; }
  std::string model_ref() const override;

 private:
  std::size_t dim_;
};

// Per-sentence lexicon density, lightly perturbed by a hash of the sentence.
class OfflineSentenceScorer : public detectors::SentenceScorer {
 public:
  std::vector<double> score(std::span<const std::string> sentences) override;
  std::string id() const override { return "offline-sentence"; }
};

class OfflineScoreApi : public detectors::ScoreApi {
 public:
  double score(const std::string& text) override;
  std::string provider_id() const override { return "offline-score"; }
};

std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = 0);

}  // namespace revdetect::offline
