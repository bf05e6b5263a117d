#pragma once

#include <filesystem>
#include <memory>

#include "revdetect/detectors/adapters.hpp"
#include "revdetect/embeddings/embedder.hpp"
#include "revdetect/llm/chat.hpp"
#include "revdetect/llm/provider.hpp"

namespace revdetect::cli {

// Builds the provider clients a command needs. Tests substitute their own.
class ProviderFactory {
 public:
  virtual ~ProviderFactory() = default;
  virtual std::shared_ptr<llm::ChatModel> chat(const llm::EndpointConfig& endpoint) = 0;
  virtual std::shared_ptr<embeddings::EmbeddingProvider> embedding(
      const llm::EndpointConfig& endpoint, std::size_t offline_dim) = 0;
  virtual std::shared_ptr<detectors::SentenceScorer> sentence_scorer(
      const llm::EndpointConfig& endpoint) = 0;
  virtual std::shared_ptr<detectors::ScoreApi> score_api(const llm::EndpointConfig& endpoint) = 0;
};

// provider = offline selects the deterministic local stand-ins; openai/http
// select the HTTP clients.
class DefaultProviderFactory : public ProviderFactory {
 public:
  explicit DefaultProviderFactory(std::filesystem::path transcript_log = {});

  std::shared_ptr<llm::ChatModel> chat(const llm::EndpointConfig& endpoint) override;
  std::shared_ptr<embeddings::EmbeddingProvider> embedding(const llm::EndpointConfig& endpoint,
                                                           std::size_t offline_dim) override;
  std::shared_ptr<detectors::SentenceScorer> sentence_scorer(
      const llm::EndpointConfig& endpoint) override;
  std::shared_ptr<detectors::ScoreApi> score_api(const llm::EndpointConfig& endpoint) override;

 private:
  std::shared_ptr<llm::TranscriptLog> transcripts_;
};

}  // namespace revdetect::cli
