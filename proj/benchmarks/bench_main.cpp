#include <benchmark/benchmark.h>

#include <random>

#include "revdetect/corpus/text.hpp"
#include "revdetect/embeddings/vector.hpp"
#include "revdetect/metrics/metrics.hpp"

using namespace revdetect;

namespace {

std::vector<double> uniform(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> out(n);
  for (auto& x : out) x = u(rng);
  return out;
}

void BM_RocCurve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const metrics::LabeledScores scores{uniform(n, 1), uniform(n, 2)};
  for (auto _ : state) benchmark::DoNotOptimize(metrics::roc_curve(scores).auc);
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(2 * n));
}
BENCHMARK(BM_RocCurve)->Range(64, 1 << 16);

void BM_KfoldCalibrate(benchmark::State& state) {
  const auto negatives = uniform(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(metrics::kfold_calibrate(negatives, 0.05, 5, 7).threshold_mean);
  }
}
BENCHMARK(BM_KfoldCalibrate)->Range(1000, 100000);

void BM_Cosine(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  const embeddings::EmbeddingVector a(uniform(dim, 4), "m"), b(uniform(dim, 5), "m");
  for (auto _ : state) benchmark::DoNotOptimize(embeddings::cosine_similarity(a, b));
}
BENCHMARK(BM_Cosine)->Arg(256)->Arg(1536)->Arg(3072);

void BM_SplitSentences(benchmark::State& state) {
  std::string text;
  for (int i = 0; i < state.range(0); ++i) {
    text += "The method (e.g. Fig. 3) improves recall by 4.5 points. Is it robust? ";
  }
  for (auto _ : state) benchmark::DoNotOptimize(corpus::split_sentences(text).size());
  state.SetBytesProcessed(state.iterations() * static_cast<long long>(text.size()));
}
BENCHMARK(BM_SplitSentences)->Arg(10)->Arg(1000);

}  // namespace
BENCHMARK_MAIN();
