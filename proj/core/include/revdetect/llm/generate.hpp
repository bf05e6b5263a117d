#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "revdetect/corpus/model.hpp"
#include "revdetect/llm/chat.hpp"

namespace revdetect::llm {

struct GenerationFailure {
  std::string paper_id;
  corpus::Archetype archetype;
  std::string message;
  std::optional<ProviderErrorKind> provider_error;  // unset for parse errors
};

struct GenerationResult {
  std::vector<corpus::Review> reviews;  // ordered by (paper id, archetype index)
  std::vector<GenerationFailure> failures;
};

struct GenerationOptions {
  std::string guideline;  // empty selects the bundled default
  int max_in_flight = 4;
  double temperature = 1.0;
  int max_output_tokens = 4096;
};

// Deterministic id of the generated review for one (paper, generator,
// archetype) triple.
std::string generated_review_id(std::string_view paper_id,
                                std::string_view generator,
                                corpus::Archetype archetype);

// One review per (paper, archetype). Per-item generation or parse failures
// are collected rather than aborting the batch. Throws InvalidArgument for an
// empty archetype list or an unknown paper id.
GenerationResult generate_reviews(const corpus::Corpus& corpus,
                                  std::span<const std::string> paper_ids,
                                  std::span<const corpus::Archetype> archetypes,
                                  ChatModel& model,
                                  const GenerationOptions& options = {});

}  // namespace revdetect::llm
