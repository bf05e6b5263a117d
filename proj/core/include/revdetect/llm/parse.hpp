#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "revdetect/corpus/model.hpp"
#include "revdetect/label.hpp"

namespace revdetect::llm {

enum class Decision { Accept, Reject };

struct Ratings {
  int originality = 1;
  int quality = 1;
  int clarity = 1;
  int significance = 1;
  int soundness = 1;
  int presentation = 1;
  int contribution = 1;

  friend bool operator==(const Ratings&, const Ratings&) = default;
};

// Review produced with the generation response template.
struct StructuredReview {
  std::string summary;
  std::vector<std::string> strengths;
  std::vector<std::string> weaknesses;
  std::vector<std::string> questions;
  std::vector<std::string> limitations;
  bool ethical_concerns = false;
  Ratings ratings;
  int overall = 1;     // 1..10
  int confidence = 1;  // 1..5
  Decision decision = Decision::Reject;

  // Summary as text, the four lists as item sections, in template order.
  std::vector<corpus::Section> to_sections() const;

  friend bool operator==(const StructuredReview&, const StructuredReview&) = default;
};

struct JudgeVerdict {
  Label decision = Label::Human;
  std::string rationale;  // stored verbatim

  friend bool operator==(const JudgeVerdict&, const JudgeVerdict&) = default;
};

// Body of the last ```json fenced block in `raw`, if any.
std::optional<std::string> last_json_block(std::string_view raw);

// Throws ParseError when the block is missing, the JSON is invalid, a field is
// missing or mistyped, a rating is out of range, or Decision is anything but
// "Accept" / "Reject".
StructuredReview parse_structured_review(std::string_view raw);

// Accepts a fenced block (```json or bare ```) or a response that is a single
// JSON object. Result must be "human" or "AI" in any letter case and
// Rationale a non-empty string.
JudgeVerdict parse_judge_verdict(std::string_view raw);

// Template-order JSON object for `review` (no fence).
std::string structured_review_json(const StructuredReview& review);
// THOUGHT section plus fenced REVIEW JSON, as a model would answer.
std::string render_structured_response(const StructuredReview& review,
                                       std::string_view thought);
std::string render_judge_response(const JudgeVerdict& verdict);

}  // namespace revdetect::llm
