#include "revdetect/llm/prompts.hpp"

#include <algorithm>

#include "llm/templates.hpp"
#include "revdetect/util/strings.hpp"

namespace revdetect::llm {
namespace {

constexpr std::string_view kAnchorSystem = "You are a helpful assistant.";
constexpr std::string_view kAnchorUser =
    "Write a peer review of the following paper.\n\n```\n{text}\n```";

void require_body(const corpus::Paper& paper) {
  if (util::trim(paper.body).empty()) {
    throw InvalidArgument("paper '" + paper.id + "' has an empty body");
  }
}

}  // namespace

std::string_view archetype_persona(corpus::Archetype archetype) {
  switch (archetype) {
    case corpus::Archetype::Balanced:
      return templates::kBalancedPersona;
    case corpus::Archetype::Nitpicky:
      return templates::kNitpickyPersona;
    case corpus::Archetype::Innovative:
      return templates::kInnovativePersona;
    case corpus::Archetype::Conservative:
      return templates::kConservativePersona;
  }
  return templates::kBalancedPersona;
}

std::string_view default_review_guideline() { return templates::kIclr2022Guideline; }

std::string_view judge_system_prompt() { return templates::kJudgeSystem; }

std::string fill_template(
    std::string_view tmpl,
    std::initializer_list<std::pair<std::string_view, std::string_view>> values) {
  std::string out;
  out.reserve(tmpl.size());
  std::size_t pos = 0;
  while (pos < tmpl.size()) {
    const std::size_t open = tmpl.find('{', pos);
    if (open == std::string_view::npos) break;
    const std::size_t close = tmpl.find('}', open + 1);
    if (close == std::string_view::npos) break;
    const std::string_view name = tmpl.substr(open + 1, close - open - 1);
    const auto* match = std::find_if(values.begin(), values.end(),
                                     [&](const auto& kv) { return kv.first == name; });
    if (match == values.end()) {
      out.append(tmpl.substr(pos, open + 1 - pos));
      pos = open + 1;
      continue;
    }
    out.append(tmpl.substr(pos, open - pos));
    out.append(match->second);
    pos = close + 1;
  }
  out.append(tmpl.substr(pos));
  return out;
}

ChatRequest render_generation_prompt(const corpus::Paper& paper,
                                     corpus::Archetype archetype,
                                     std::string_view guideline,
                                     std::string model_ref) {
  require_body(paper);
  if (util::trim(guideline).empty()) throw InvalidArgument("review guideline is empty");
  ChatRequest request;
  request.model_ref = std::move(model_ref);
  request.system_prompt =
      fill_template(templates::kGenerationSystem,
                    {{"reviewer_type", archetype_persona(archetype)},
                     {"iclr_2022_guideline", guideline}});
  request.user_prompt = fill_template(templates::kGenerationUser, {{"text", paper.body}});
  request.temperature = kGenerationTemperature;
  return request;
}

ChatRequest render_anchor_prompt(const corpus::Paper& paper, std::string model_ref) {
  require_body(paper);
  ChatRequest request;
  request.model_ref = std::move(model_ref);
  request.system_prompt = std::string(kAnchorSystem);
  request.user_prompt = fill_template(kAnchorUser, {{"text", paper.body}});
  request.temperature = kDeterministicTemperature;
  return request;
}

ChatRequest render_judge_prompt(std::string_view review_text, std::string model_ref) {
  if (util::trim(review_text).empty()) throw InvalidArgument("review text is empty");
  ChatRequest request;
  request.model_ref = std::move(model_ref);
  request.system_prompt = std::string(templates::kJudgeSystem);
  request.user_prompt = fill_template(templates::kJudgeUser, {{"review", review_text}});
  request.temperature = kDeterministicTemperature;
  return request;
}

}  // namespace revdetect::llm
