#pragma once

#include <string>
#include <string_view>

#include "revdetect/corpus/model.hpp"
#include "revdetect/llm/chat.hpp"

namespace revdetect::llm {

// Identifies the canonical anchor prompt wording. Bump whenever the anchor
// prompt text changes so stored anchors are not silently mixed.
inline constexpr std::string_view kAnchorPromptVersion = "anchor-v1";

inline constexpr double kGenerationTemperature = 1.0;
inline constexpr double kDeterministicTemperature = 0.0;

// Reviewer persona paragraph substituted for {reviewer_type}.
std::string_view archetype_persona(corpus::Archetype archetype);
// ICLR 2022 reviewer guideline text substituted for {iclr_2022_guideline}.
std::string_view default_review_guideline();

std::string_view judge_system_prompt();

// Replaces each `{name}` placeholder in one left-to-right pass; substituted
// text is never rescanned. Unknown placeholders are left untouched.
std::string fill_template(
    std::string_view tmpl,
    std::initializer_list<std::pair<std::string_view, std::string_view>> values);

// Archetype review generation request. Throws InvalidArgument on an empty
// paper body or guideline.
ChatRequest render_generation_prompt(const corpus::Paper& paper,
                                     corpus::Archetype archetype,
                                     std::string_view guideline,
                                     std::string model_ref);

// Anchor review request: a fixed single sentence plus the fenced paper body,
// with none of the persona or guideline text.
ChatRequest render_anchor_prompt(const corpus::Paper& paper,
                                 std::string model_ref);

// Human-vs-AI judge request with the review substituted for {review}.
ChatRequest render_judge_prompt(std::string_view review_text,
                                std::string model_ref);

}  // namespace revdetect::llm
