#include "revdetect/llm/generate.hpp"

#include <algorithm>

#include "revdetect/llm/parse.hpp"
#include "revdetect/llm/prompts.hpp"
#include "revdetect/util/parallel.hpp"

namespace revdetect::llm {

std::string generated_review_id(std::string_view paper_id, std::string_view generator,
                                corpus::Archetype archetype) {
  std::string id(paper_id);
  id += ':';
  id += generator;
  id += ':';
  id += corpus::to_string(archetype);
  return id;
}

GenerationResult generate_reviews(const corpus::Corpus& corpus,
                                  std::span<const std::string> paper_ids,
                                  std::span<const corpus::Archetype> archetypes,
                                  ChatModel& model, const GenerationOptions& options) {
  if (archetypes.empty()) throw InvalidArgument("archetype list is empty");
  std::vector<std::string> ids(paper_ids.begin(), paper_ids.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  for (const auto& id : ids) {
    if (corpus.find_paper(id) == nullptr) throw InvalidArgument("unknown paper id '" + id + "'");
  }

  const std::string generator = model.model_ref();
  const std::string_view guideline =
      options.guideline.empty() ? default_review_guideline() : std::string_view(options.guideline);

  struct Slot {
    std::optional<corpus::Review> review;
    std::optional<GenerationFailure> failure;
  };
  const std::size_t total = ids.size() * archetypes.size();
  std::vector<Slot> slots(total);

  util::parallel_for(total, options.max_in_flight, [&](std::size_t i) {
    const corpus::Paper& paper = *corpus.find_paper(ids[i / archetypes.size()]);
    const corpus::Archetype archetype = archetypes[i % archetypes.size()];
    try {
      ChatRequest request = render_generation_prompt(paper, archetype, guideline, generator);
      request.temperature = options.temperature;
      request.max_output_tokens = options.max_output_tokens;
      const StructuredReview parsed = parse_structured_review(model.complete(request));
      corpus::Review review;
      review.id = generated_review_id(paper.id, generator, archetype);
      review.paper_id = paper.id;
      review.source = corpus::AiSource{generator, archetype};
      review.sections = parsed.to_sections();
      review.venue_year = paper.year;
      slots[i].review = std::move(review);
    } catch (const ProviderError& e) {
      slots[i].failure = GenerationFailure{paper.id, archetype, e.what(), e.kind()};
    } catch (const Error& e) {
      slots[i].failure = GenerationFailure{paper.id, archetype, e.what(), std::nullopt};
    }
  });

  GenerationResult result;
  for (auto& slot : slots) {
    if (slot.review) result.reviews.push_back(std::move(*slot.review));
    if (slot.failure) result.failures.push_back(std::move(*slot.failure));
  }
  return result;
}

}  // namespace revdetect::llm
