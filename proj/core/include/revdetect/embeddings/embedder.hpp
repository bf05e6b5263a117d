#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "revdetect/embeddings/vector.hpp"
#include "revdetect/llm/provider.hpp"

namespace revdetect::embeddings {

// A remote or local embedding model. Must be callable from several threads.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual std::vector<double> embed_raw(const std::string& text) = 0;
  virtual std::string provider_id() const = 0;
  virtual std::string model_ref() const = 0;
};

// OpenAI-compatible `/embeddings` client with retries.
class HttpEmbeddingProvider : public EmbeddingProvider {
 public:
  HttpEmbeddingProvider(llm::EndpointConfig endpoint,
                        std::shared_ptr<llm::HttpTransport> transport,
                        llm::Sleeper sleep = llm::real_sleeper());

  std::vector<double> embed_raw(const std::string& text) override;
  std::string provider_id() const override;
  std::string model_ref() const override { return endpoint_.model_ref; }

 private:
  llm::EndpointConfig endpoint_;
  std::shared_ptr<llm::HttpTransport> transport_;
  llm::Sleeper sleep_;
};

// NFC, CRLF/CR to LF, trailing whitespace stripped from every line and from
// the end of the text.
std::string normalize_text(std::string_view text);

struct CacheKey {
  std::string provider_id;
  std::string model_ref;
  std::string content_hash;  // SHA-256 hex of the normalized text
};

CacheKey make_cache_key(std::string_view provider_id, std::string_view model_ref,
                        std::string_view normalized_text);

struct CachedEmbedding {
  std::vector<double> values;
  bool truncated = false;
};

// Content-addressed store, one JSON record per key at
// <root>/<provider>/<model>/<first-2-hex>/<hash>.json. Writes are atomic and
// idempotent, so concurrent writers of one key are harmless.
class EmbeddingCache {
 public:
  explicit EmbeddingCache(std::filesystem::path root);

  std::optional<CachedEmbedding> load(const CacheKey& key) const;
  void store(const CacheKey& key, const CachedEmbedding& entry) const;

  // Dimension recorded for (provider, model), if any vector was stored.
  std::optional<std::size_t> recorded_dim(std::string_view provider_id,
                                          std::string_view model_ref) const;

  std::filesystem::path path_for(const CacheKey& key) const;
  const std::filesystem::path& root() const { return root_; }

 private:
  std::filesystem::path model_dir(std::string_view provider_id,
                                  std::string_view model_ref) const;
  std::filesystem::path root_;
};

struct EmbedResult {
  EmbeddingVector vector;
  bool from_cache = false;
  bool truncated = false;
};

// Cache-aware embedding front end. Texts are normalized, truncated to
// `char_budget` code points when that is nonzero, then looked up in the cache
// before the provider is called.
class Embedder {
 public:
  Embedder(std::shared_ptr<EmbeddingProvider> provider,
           std::shared_ptr<EmbeddingCache> cache = nullptr,
           std::size_t char_budget = 0);

  // Throws InvalidArgument for empty text, DimensionMismatch when the vector
  // disagrees with earlier vectors of the same model, and llm::ProviderError
  // for provider failures (including an all-zero vector).
  EmbedResult embed(std::string_view text);

  std::string provider_id() const { return provider_->provider_id(); }
  std::string model_ref() const { return provider_->model_ref(); }
  std::size_t provider_calls() const;

 private:
  void check_dim(std::size_t dim);

  std::shared_ptr<EmbeddingProvider> provider_;
  std::shared_ptr<EmbeddingCache> cache_;
  std::size_t char_budget_;
  mutable std::mutex mu_;
  std::optional<std::size_t> dim_;
  std::size_t provider_calls_ = 0;
};

}  // namespace revdetect::embeddings
