#include "revdetect/embeddings/vector.hpp"

#include <algorithm>
#include <cmath>

#include "revdetect/error.hpp"

namespace revdetect::embeddings {

EmbeddingVector::EmbeddingVector(std::vector<double> values, std::string model_ref)
    : values_(std::move(values)), model_ref_(std::move(model_ref)) {
  if (values_.empty()) throw InvalidArgument("embedding vector is empty");
  bool nonzero = false;
  for (double v : values_) {
    if (!std::isfinite(v)) throw InvalidArgument("embedding vector has a non-finite value");
    nonzero = nonzero || v != 0.0;
  }
  if (!nonzero) throw InvalidArgument("embedding vector is all zeros");
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("cosine similarity of vectors with dims " +
                            std::to_string(a.size()) + " and " + std::to_string(b.size()));
  }
  double dot = 0.0;
  double norm_a = 0.0;
  double norm_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    norm_a += a[i] * a[i];
    norm_b += b[i] * b[i];
  }
  if (norm_a == 0.0 || norm_b == 0.0) throw InvalidArgument("cosine similarity of a zero vector");
  return std::clamp(dot / (std::sqrt(norm_a) * std::sqrt(norm_b)), -1.0, 1.0);
}

double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b) {
  return cosine_similarity(a.values(), b.values());
}

double normalize_similarity(double similarity) {
  if (!(similarity >= -1.0 && similarity <= 1.0)) {
    throw InvalidArgument("similarity outside [-1, 1]");
  }
  return (similarity + 1.0) / 2.0;
}

}  // namespace revdetect::embeddings
