#include "revdetect/embeddings/embedder.hpp"

#include <chrono>

#include <json.hpp>
#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

#include "revdetect/error.hpp"
#include "revdetect/util/fs.hpp"
#include "revdetect/util/strings.hpp"

namespace revdetect::embeddings {
namespace {

using json = nlohmann::json;

std::string to_nfc(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error("ICU NFC normalizer unavailable");
  const icu::UnicodeString input = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  if (nfc->isNormalized(input, status) && U_SUCCESS(status)) return std::string(text);
  status = U_ZERO_ERROR;
  const icu::UnicodeString normalized = nfc->normalize(input, status);
  if (U_FAILURE(status)) throw Error("NFC normalization failed");
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

// Keeps at most `budget` UTF-8 code points.
std::string_view truncate_code_points(std::string_view text, std::size_t budget, bool& truncated) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const auto byte = static_cast<unsigned char>(text[i]);
    if ((byte & 0xC0) != 0x80) {
      if (count == budget) {
        truncated = true;
        return text.substr(0, i);
      }
      ++count;
    }
  }
  truncated = false;
  return text;
}

}  // namespace

std::string normalize_text(std::string_view text) {
  const std::string nfc = to_nfc(text);
  std::string out;
  out.reserve(nfc.size());
  std::string line;
  const auto flush_line = [&] {
    std::size_t end = line.size();
    while (end > 0 && (line[end - 1] == ' ' || line[end - 1] == '\t' ||
                       line[end - 1] == '\f' || line[end - 1] == '\v')) {
      --end;
    }
    out.append(line, 0, end);
    line.clear();
  };
  for (std::size_t i = 0; i < nfc.size(); ++i) {
    const char c = nfc[i];
    if (c == '\r' || c == '\n') {
      if (c == '\r' && i + 1 < nfc.size() && nfc[i + 1] == '\n') ++i;
      flush_line();
      out += '\n';
    } else {
      line += c;
    }
  }
  flush_line();
  while (!out.empty() && out.back() == '\n') out.pop_back();
  return out;
}

CacheKey make_cache_key(std::string_view provider_id, std::string_view model_ref,
                        std::string_view normalized_text) {
  return {std::string(provider_id), std::string(model_ref), util::sha256_hex(normalized_text)};
}

HttpEmbeddingProvider::HttpEmbeddingProvider(llm::EndpointConfig endpoint,
                                             std::shared_ptr<llm::HttpTransport> transport,
                                             llm::Sleeper sleep)
    : endpoint_(std::move(endpoint)), transport_(std::move(transport)), sleep_(std::move(sleep)) {}

std::string HttpEmbeddingProvider::provider_id() const {
  return endpoint_.provider.empty() ? "http" : endpoint_.provider;
}

std::vector<double> HttpEmbeddingProvider::embed_raw(const std::string& text) {
  const json request{{"model", endpoint_.model_ref}, {"input", text}};
  const std::string path = endpoint_.path.empty() ? "/embeddings" : endpoint_.path;
  const std::string body =
      llm::post_with_retries(*transport_, endpoint_, path, request.dump(), sleep_);
  try {
    const json parsed = json::parse(body);
    const json& values = parsed.at("data").at(0).at("embedding");
    return values.get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw llm::ProviderError(llm::ProviderErrorKind::Malformed,
                             std::string("embedding response: ") + e.what());
  }
}

EmbeddingCache::EmbeddingCache(std::filesystem::path root) : root_(std::move(root)) {}

std::filesystem::path EmbeddingCache::model_dir(std::string_view provider_id,
                                                std::string_view model_ref) const {
  return root_ / util::slug(provider_id) / util::slug(model_ref);
}

std::filesystem::path EmbeddingCache::path_for(const CacheKey& key) const {
  return model_dir(key.provider_id, key.model_ref) / key.content_hash.substr(0, 2) /
         (key.content_hash + ".json");
}

std::optional<CachedEmbedding> EmbeddingCache::load(const CacheKey& key) const {
  const auto path = path_for(key);
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return std::nullopt;
  json record;
  try {
    record = json::parse(util::read_file(path));
    CachedEmbedding entry;
    entry.values = record.at("values").get<std::vector<double>>();
    entry.truncated = record.value("truncated", false);
    if (entry.values.size() != record.at("dim").get<std::size_t>()) {
      throw ParseError("cache record dim disagrees with its values");
    }
    return entry;
  } catch (const json::exception& e) {
    throw ParseError("corrupt embedding cache record " + path.string() + ": " + e.what());
  }
}

void EmbeddingCache::store(const CacheKey& key, const CachedEmbedding& entry) const {
  const auto now = std::chrono::duration_cast<std::chrono::seconds>(
                       std::chrono::system_clock::now().time_since_epoch())
                       .count();
  const json record{{"provider", key.provider_id},
                    {"model_ref", key.model_ref},
                    {"dim", entry.values.size()},
                    {"values", entry.values},
                    {"truncated", entry.truncated},
                    {"created_at", now}};
  util::write_file_atomic(path_for(key), record.dump());
  const auto meta = model_dir(key.provider_id, key.model_ref) / "meta.json";
  std::error_code ec;
  if (!std::filesystem::exists(meta, ec)) {
    util::write_file_atomic(meta, json{{"model_ref", key.model_ref},
                                       {"dim", entry.values.size()}}
                                      .dump());
  }
}

std::optional<std::size_t> EmbeddingCache::recorded_dim(std::string_view provider_id,
                                                        std::string_view model_ref) const {
  const auto meta = model_dir(provider_id, model_ref) / "meta.json";
  std::error_code ec;
  if (!std::filesystem::exists(meta, ec)) return std::nullopt;
  try {
    return json::parse(util::read_file(meta)).at("dim").get<std::size_t>();
  } catch (const json::exception& e) {
    throw ParseError("corrupt cache metadata " + meta.string() + ": " + e.what());
  }
}

Embedder::Embedder(std::shared_ptr<EmbeddingProvider> provider,
                   std::shared_ptr<EmbeddingCache> cache, std::size_t char_budget)
    : provider_(std::move(provider)), cache_(std::move(cache)), char_budget_(char_budget) {
  if (!provider_) throw InvalidArgument("embedder needs a provider");
  if (cache_) dim_ = cache_->recorded_dim(provider_->provider_id(), provider_->model_ref());
}

std::size_t Embedder::provider_calls() const {
  std::lock_guard lock(mu_);
  return provider_calls_;
}

void Embedder::check_dim(std::size_t dim) {
  std::lock_guard lock(mu_);
  if (!dim_) {
    dim_ = dim;
    return;
  }
  if (*dim_ != dim) {
    throw DimensionMismatch("model " + provider_->model_ref() + " returned dim " +
                            std::to_string(dim) + ", expected " + std::to_string(*dim_));
  }
}

EmbedResult Embedder::embed(std::string_view text) {
  if (util::trim(text).empty()) throw InvalidArgument("cannot embed empty text");
  const std::string normalized = normalize_text(text);
  bool truncated = false;
  const std::string input(char_budget_ == 0 ? std::string_view(normalized)
                                            : truncate_code_points(normalized, char_budget_, truncated));
  const std::string model = provider_->model_ref();
  const CacheKey key = make_cache_key(provider_->provider_id(), model, input);

  if (cache_) {
    if (auto hit = cache_->load(key)) {
      check_dim(hit->values.size());
      return {EmbeddingVector(std::move(hit->values), model), true, hit->truncated};
    }
  }

  std::vector<double> values = provider_->embed_raw(input);
  {
    std::lock_guard lock(mu_);
    ++provider_calls_;
  }
  std::optional<EmbeddingVector> vector;
  try {
    vector.emplace(values, model);
  } catch (const InvalidArgument& e) {
    throw llm::ProviderError(llm::ProviderErrorKind::Malformed,
                             std::string("embedding provider returned an invalid vector: ") + e.what());
  }
  check_dim(values.size());
  if (cache_) cache_->store(key, {std::move(values), truncated});
  return {std::move(*vector), false, truncated};
}

}  // namespace revdetect::embeddings
