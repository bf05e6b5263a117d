#include "revdetect/cli/providers.hpp"

#include "revdetect/offline/providers.hpp"

namespace revdetect::cli {
namespace {

bool is_offline(const llm::EndpointConfig& endpoint) { return endpoint.provider == "offline"; }

std::shared_ptr<llm::HttpTransport> transport_for(const llm::EndpointConfig& endpoint) {
  return llm::make_http_transport(endpoint.base_url, endpoint.timeout);
}

}  // namespace

DefaultProviderFactory::DefaultProviderFactory(std::filesystem::path transcript_log) {
  if (!transcript_log.empty()) {
    std::filesystem::create_directories(transcript_log.parent_path());
    transcripts_ = std::make_shared<llm::TranscriptLog>(transcript_log.string());
  }
}

std::shared_ptr<llm::ChatModel> DefaultProviderFactory::chat(const llm::EndpointConfig& endpoint) {
  if (is_offline(endpoint)) return std::make_shared<offline::OfflineChatModel>(endpoint.model_ref);
  return std::make_shared<llm::HttpChatModel>(endpoint, transport_for(endpoint),
                                              llm::real_sleeper(), transcripts_);
}

std::shared_ptr<embeddings::EmbeddingProvider> DefaultProviderFactory::embedding(
    const llm::EndpointConfig& endpoint, std::size_t offline_dim) {
  if (is_offline(endpoint)) return std::make_shared<offline::HashingEmbeddingProvider>(offline_dim);
  return std::make_shared<embeddings::HttpEmbeddingProvider>(endpoint, transport_for(endpoint));
}

std::shared_ptr<detectors::SentenceScorer> DefaultProviderFactory::sentence_scorer(
    const llm::EndpointConfig& endpoint) {
  if (is_offline(endpoint)) return std::make_shared<offline::OfflineSentenceScorer>();
  return std::make_shared<detectors::HttpSentenceScorer>(endpoint, transport_for(endpoint));
}

std::shared_ptr<detectors::ScoreApi> DefaultProviderFactory::score_api(
    const llm::EndpointConfig& endpoint) {
  if (is_offline(endpoint)) return std::make_shared<offline::OfflineScoreApi>();
  return std::make_shared<detectors::HttpScoreApi>(endpoint, transport_for(endpoint));
}

}  // namespace revdetect::cli
