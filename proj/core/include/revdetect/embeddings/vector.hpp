#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace revdetect::embeddings {

// Fixed-dimension embedding with model provenance. Construction rejects
// empty, non-finite and all-zero vectors.
class EmbeddingVector {
 public:
  EmbeddingVector(std::vector<double> values, std::string model_ref);

  std::span<const double> values() const { return values_; }
  std::size_t dim() const { return values_.size(); }
  const std::string& model_ref() const { return model_ref_; }

  friend bool operator==(const EmbeddingVector&, const EmbeddingVector&) = default;

 private:
  std::vector<double> values_;
  std::string model_ref_;
};

// dot(a, b) / (|a| |b|) in double precision, clamped into [-1, 1]. Throws
// DimensionMismatch.
double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b);
double cosine_similarity(std::span<const double> a, std::span<const double> b);

// Maps a similarity in [-1, 1] onto [0, 1] as (s + 1) / 2. Throws
// InvalidArgument outside that range.
double normalize_similarity(double similarity);

}  // namespace revdetect::embeddings
