#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <thread>

#include <json.hpp>

#include "revdetect/embeddings/embedder.hpp"
#include "revdetect/embeddings/vector.hpp"
#include "revdetect/error.hpp"
#include "revdetect/util/fs.hpp"
#include "test_support.hpp"

using namespace revdetect;
using namespace revdetect::embeddings;
using revdetect::testing::FunctionEmbeddingProvider;
using revdetect::testing::TempDir;

namespace {

// Independent oracle: long double accumulation, no clamping.
long double cosine_oracle(const std::vector<double>& a, const std::vector<double>& b) {
  long double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<long double>(a[i]) * b[i];
    na += static_cast<long double>(a[i]) * a[i];
    nb += static_cast<long double>(b[i]) * b[i];
  }
  return dot / std::sqrt(na * nb);
}

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> d;
  std::vector<double> v(dim);
  for (auto& x : v) x = d(rng);
  return v;
}

std::shared_ptr<FunctionEmbeddingProvider> length_provider() {
  return std::make_shared<FunctionEmbeddingProvider>([](const std::string& text) {
    return std::vector<double>{static_cast<double>(text.size()), 1.0, 2.0};
  });
}

}  // namespace

TEST(Cosine, Examples) {
  const EmbeddingVector a({1, 0}, "m"), b({0, 1}, "m"), c({2, 0}, "m"), d({-1, 0}, "m");
  EXPECT_DOUBLE_EQ(cosine_similarity(a, b), 0.0);
  EXPECT_DOUBLE_EQ(cosine_similarity(a, c), 1.0);
  EXPECT_DOUBLE_EQ(cosine_similarity(a, d), -1.0);
  EXPECT_NEAR(cosine_similarity(std::vector<double>{1, 1}, std::vector<double>{1, 0}),
              1.0 / std::sqrt(2.0), 1e-15);
}

TEST(Cosine, DimensionMismatch) {
  EXPECT_THROW(cosine_similarity(EmbeddingVector({1, 2}, "m"), EmbeddingVector({1, 2, 3}, "m")),
               DimensionMismatch);
}

TEST(Cosine, MatchesOracleAndStaysInRange) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t dim = 1 + trial % 64;
    const auto a = random_vector(rng, dim);
    auto b = trial % 10 == 0 ? a : random_vector(rng, dim);
    const double s = cosine_similarity(a, b);
    EXPECT_GE(s, -1.0);
    EXPECT_LE(s, 1.0);
    EXPECT_NEAR(s, static_cast<double>(cosine_oracle(a, b)), 1e-12);
    EXPECT_DOUBLE_EQ(s, cosine_similarity(b, a));
  }
}

TEST(Cosine, ScaleInvariance) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_vector(rng, 16);
    const auto b = random_vector(rng, 16);
    auto scaled = a;
    const double k = std::ldexp(1.0, trial % 20 - 10);
    for (auto& x : scaled) x *= k;
    EXPECT_NEAR(cosine_similarity(a, b), cosine_similarity(scaled, b), 1e-12);
  }
}

TEST(Normalize, Examples) {
  EXPECT_DOUBLE_EQ(normalize_similarity(1.0), 1.0);
  EXPECT_DOUBLE_EQ(normalize_similarity(0.0), 0.5);
  EXPECT_DOUBLE_EQ(normalize_similarity(-1.0), 0.0);
  EXPECT_DOUBLE_EQ(normalize_similarity(0.9), 0.95);
  EXPECT_THROW(normalize_similarity(1.0001), InvalidArgument);
  EXPECT_THROW(normalize_similarity(std::nan("")), InvalidArgument);
}

TEST(Vector, RejectsDegenerateValues) {
  EXPECT_THROW(EmbeddingVector({}, "m"), InvalidArgument);
  EXPECT_THROW(EmbeddingVector({0.0, 0.0}, "m"), InvalidArgument);
  EXPECT_THROW(EmbeddingVector({1.0, INFINITY}, "m"), InvalidArgument);
  EXPECT_THROW(EmbeddingVector({1.0, std::nan("")}, "m"), InvalidArgument);
}

TEST(NormalizeText, NfcLineEndingsAndTrailingWhitespace) {
  EXPECT_EQ(normalize_text("e\xCC\x81"), "\xC3\xA9");
  EXPECT_EQ(normalize_text("a \r\nb\t\rc  \n\n"), "a\nb\nc");
  EXPECT_EQ(normalize_text("  lead"), "  lead");
}

TEST(Embedder, CacheHitSkipsProvider) {
  TempDir dir;
  auto provider = length_provider();
  auto cache = std::make_shared<EmbeddingCache>(dir.path());
  Embedder embedder(provider, cache);
  const auto first = embedder.embed("hello");
  const auto second = embedder.embed("hello");
  EXPECT_FALSE(first.from_cache);
  EXPECT_TRUE(second.from_cache);
  EXPECT_EQ(first.vector, second.vector);
  EXPECT_EQ(provider->calls(), 1);

  // A fresh embedder over the same cache directory also hits.
  Embedder again(provider, std::make_shared<EmbeddingCache>(dir.path()));
  EXPECT_TRUE(again.embed("hello").from_cache);
  EXPECT_EQ(provider->calls(), 1);
}

TEST(Embedder, NormalizationEquivalentTextsShareEntry) {
  TempDir dir;
  auto provider = length_provider();
  Embedder embedder(provider, std::make_shared<EmbeddingCache>(dir.path()));
  embedder.embed("caf\xC3\xA9\r\n");
  EXPECT_TRUE(embedder.embed("cafe\xCC\x81  ").from_cache);
  EXPECT_EQ(provider->calls(), 1);
}

TEST(Embedder, CacheIsTransparent) {
  TempDir dir;
  auto cached_provider = length_provider();
  auto plain_provider = length_provider();
  Embedder cached(cached_provider, std::make_shared<EmbeddingCache>(dir.path()));
  Embedder plain(plain_provider);
  for (const char* text : {"one", "two words", "one", "three\nlines\nhere"}) {
    EXPECT_EQ(cached.embed(text).vector, plain.embed(text).vector) << text;
  }
  EXPECT_EQ(cached_provider->calls(), 3);
  EXPECT_EQ(plain_provider->calls(), 4);
}

TEST(Embedder, DimensionChangeIsRejected) {
  TempDir dir;
  int dim = 3;
  auto provider = std::make_shared<FunctionEmbeddingProvider>(
      [&dim](const std::string&) { return std::vector<double>(dim, 1.0); });
  auto cache = std::make_shared<EmbeddingCache>(dir.path());
  Embedder embedder(provider, cache);
  embedder.embed("a");
  dim = 4;
  EXPECT_THROW(embedder.embed("b"), DimensionMismatch);

  // The recorded dimension survives a restart.
  Embedder restarted(provider, std::make_shared<EmbeddingCache>(dir.path()));
  EXPECT_THROW(restarted.embed("c"), DimensionMismatch);
}

TEST(Embedder, EmptyTextIsRejected) {
  auto provider = length_provider();
  Embedder embedder(provider);
  EXPECT_THROW(embedder.embed(""), InvalidArgument);
  EXPECT_THROW(embedder.embed(" \n\t"), InvalidArgument);
  EXPECT_EQ(provider->calls(), 0);
}

TEST(Embedder, ZeroVectorIsProviderError) {
  auto provider = std::make_shared<FunctionEmbeddingProvider>(
      [](const std::string&) { return std::vector<double>(4, 0.0); });
  Embedder embedder(provider);
  try {
    embedder.embed("text");
    FAIL();
  } catch (const llm::ProviderError& e) {
    EXPECT_EQ(e.kind(), llm::ProviderErrorKind::Malformed);
  }
}

TEST(Embedder, TruncationByCodePoints) {
  std::string seen;
  auto provider = std::make_shared<FunctionEmbeddingProvider>([&seen](const std::string& text) {
    seen = text;
    return std::vector<double>{1.0, 2.0};
  });
  Embedder embedder(provider, nullptr, 3);
  auto r = embedder.embed("\xC3\xA9\xC3\xA9\xC3\xA9\xC3\xA9");
  EXPECT_TRUE(r.truncated);
  EXPECT_EQ(seen, "\xC3\xA9\xC3\xA9\xC3\xA9");
  r = embedder.embed("abc");
  EXPECT_FALSE(r.truncated);
  EXPECT_EQ(seen, "abc");
}

TEST(Cache, PathLayoutAndRecordContents) {
  TempDir dir;
  auto provider = length_provider();
  auto cache = std::make_shared<EmbeddingCache>(dir.path());
  Embedder embedder(provider, cache);
  embedder.embed("hello");
  const auto key = make_cache_key("mock", "mock-embed", "hello");
  EXPECT_EQ(key.content_hash, util::sha256_hex("hello"));
  const auto path = cache->path_for(key);
  EXPECT_EQ(path, dir.path() / "mock" / "mock-embed" / key.content_hash.substr(0, 2) /
                      (key.content_hash + ".json"));
  ASSERT_TRUE(std::filesystem::exists(path));
  const auto record = nlohmann::json::parse(util::read_file(path));
  EXPECT_EQ(record["dim"], 3);
  EXPECT_EQ(record["model_ref"], "mock-embed");
  EXPECT_EQ(record["values"], (std::vector<double>{5.0, 1.0, 2.0}));
  EXPECT_EQ(cache->recorded_dim("mock", "mock-embed"), 3u);
}

TEST(Cache, CorruptRecordIsParseError) {
  TempDir dir;
  EmbeddingCache cache(dir.path());
  const auto key = make_cache_key("p", "m", "x");
  util::write_file_atomic(cache.path_for(key), "{not json");
  EXPECT_THROW(cache.load(key), ParseError);
}

TEST(Embedder, ConcurrentUseIsConsistent) {
  TempDir dir;
  auto provider = length_provider();
  auto embedder = std::make_shared<Embedder>(provider, std::make_shared<EmbeddingCache>(dir.path()));
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&] {
      for (int i = 0; i < 20; ++i) embedder->embed("text " + std::to_string(i % 5));
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(embedder->embed("text 3").vector.values()[0], 6.0);
}
