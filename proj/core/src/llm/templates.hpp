#pragma once

#include <string_view>

// Prompt texts used verbatim. Placeholders: {review}, {reviewer_type},
// {iclr_2022_guideline}, {text}.
namespace revdetect::llm::templates {

extern const std::string_view kJudgeSystem;
extern const std::string_view kJudgeUser;
extern const std::string_view kGenerationSystem;
extern const std::string_view kGenerationUser;
extern const std::string_view kIclr2022Guideline;
extern const std::string_view kBalancedPersona;
extern const std::string_view kNitpickyPersona;
extern const std::string_view kInnovativePersona;
extern const std::string_view kConservativePersona;

}  // namespace revdetect::llm::templates
