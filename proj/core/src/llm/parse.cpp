#include "revdetect/llm/parse.hpp"

#include <optional>

#include <json.hpp>

#include "revdetect/error.hpp"
#include "revdetect/util/strings.hpp"

namespace revdetect::llm {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

struct Fence {
  std::string lang;
  std::string body;
};

// All closed ``` blocks, in order of appearance. Fences are recognized only
// at the start of a line, so backticks inside JSON strings are body text.
std::vector<Fence> fenced_blocks(std::string_view raw) {
  std::vector<Fence> out;
  std::optional<Fence> open;
  std::size_t pos = 0;
  while (pos <= raw.size()) {
    std::size_t eol = raw.find('\n', pos);
    if (eol == std::string_view::npos) eol = raw.size();
    const std::string_view line = raw.substr(pos, eol - pos);
    const std::string_view trimmed = util::trim(line);
    if (!open) {
      if (trimmed.starts_with("```")) {
        open = Fence{util::ascii_lower(util::trim(trimmed.substr(3))), {}};
      }
    } else if (trimmed == "```") {
      out.push_back(std::move(*open));
      open.reset();
    } else {
      open->body.append(line);
      open->body += '\n';
    }
    pos = eol + 1;
  }
  return out;
}

json parse_object(std::string_view text, std::string_view what) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(what) + " is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw ParseError(std::string(what) + " is not a JSON object");
  return j;
}

const json& field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("missing field \"") + key + "\"");
  return *it;
}

std::string string_field(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_string()) throw ParseError(std::string("field \"") + key + "\" must be a string");
  return v.get<std::string>();
}

std::vector<std::string> list_field(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_array()) throw ParseError(std::string("field \"") + key + "\" must be a list");
  std::vector<std::string> out;
  for (const auto& item : v) {
    if (!item.is_string()) {
      throw ParseError(std::string("field \"") + key + "\" must contain only strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

int rating_field(const json& obj, const char* key, int lo, int hi) {
  const json& v = field(obj, key);
  if (!v.is_number_integer()) {
    throw ParseError(std::string("field \"") + key + "\" must be an integer");
  }
  const auto value = v.get<long long>();
  if (value < lo || value > hi) {
    throw ParseError(std::string("field \"") + key + "\" = " + std::to_string(value) +
                     " is outside " + std::to_string(lo) + ".." + std::to_string(hi));
  }
  return static_cast<int>(value);
}

}  // namespace

std::vector<corpus::Section> StructuredReview::to_sections() const {
  return {{"Summary", summary},
          {"Strengths", strengths},
          {"Weaknesses", weaknesses},
          {"Questions", questions},
          {"Limitations", limitations}};
}

std::optional<std::string> last_json_block(std::string_view raw) {
  std::optional<std::string> found;
  for (auto& fence : fenced_blocks(raw)) {
    if (fence.lang == "json") found = std::move(fence.body);
  }
  return found;
}

StructuredReview parse_structured_review(std::string_view raw) {
  const auto block = last_json_block(raw);
  if (!block) throw ParseError("response has no ```json fenced block");
  const json obj = parse_object(*block, "review block");

  StructuredReview r;
  r.summary = string_field(obj, "Summary");
  r.strengths = list_field(obj, "Strengths");
  r.weaknesses = list_field(obj, "Weaknesses");
  r.questions = list_field(obj, "Questions");
  r.limitations = list_field(obj, "Limitations");
  const json& ethics = field(obj, "Ethical Concerns");
  if (!ethics.is_boolean()) throw ParseError("field \"Ethical Concerns\" must be a boolean");
  r.ethical_concerns = ethics.get<bool>();
  r.ratings.originality = rating_field(obj, "Originality", 1, 4);
  r.ratings.quality = rating_field(obj, "Quality", 1, 4);
  r.ratings.clarity = rating_field(obj, "Clarity", 1, 4);
  r.ratings.significance = rating_field(obj, "Significance", 1, 4);
  r.ratings.soundness = rating_field(obj, "Soundness", 1, 4);
  r.ratings.presentation = rating_field(obj, "Presentation", 1, 4);
  r.ratings.contribution = rating_field(obj, "Contribution", 1, 4);
  r.overall = rating_field(obj, "Overall", 1, 10);
  r.confidence = rating_field(obj, "Confidence", 1, 5);
  const std::string decision = string_field(obj, "Decision");
  if (decision == "Accept") {
    r.decision = Decision::Accept;
  } else if (decision == "Reject") {
    r.decision = Decision::Reject;
  } else {
    throw ParseError("Decision must be Accept or Reject, got \"" + decision + "\"");
  }
  return r;
}

JudgeVerdict parse_judge_verdict(std::string_view raw) {
  std::optional<std::string> block = last_json_block(raw);
  if (!block) {
    auto fences = fenced_blocks(raw);
    if (!fences.empty() && fences.back().lang.empty()) {
      block = std::move(fences.back().body);
    }
  }
  if (!block) {
    const std::string_view t = util::trim(raw);
    if (t.empty() || t.front() != '{') throw ParseError("judge response has no JSON block");
    block = std::string(t);
  }
  const json obj = parse_object(*block, "judge verdict");
  const std::string result = string_field(obj, "Result");
  const auto label = parse_label(util::trim(result));
  if (!label) throw ParseError("Result must be \"human\" or \"AI\", got \"" + result + "\"");
  JudgeVerdict verdict;
  verdict.decision = *label;
  verdict.rationale = string_field(obj, "Rationale");
  if (util::trim(verdict.rationale).empty()) throw ParseError("Rationale is empty");
  return verdict;
}

std::string structured_review_json(const StructuredReview& review) {
  ordered_json j;
  j["Summary"] = review.summary;
  j["Strengths"] = review.strengths;
  j["Weaknesses"] = review.weaknesses;
  j["Questions"] = review.questions;
  j["Limitations"] = review.limitations;
  j["Ethical Concerns"] = review.ethical_concerns;
  j["Originality"] = review.ratings.originality;
  j["Quality"] = review.ratings.quality;
  j["Clarity"] = review.ratings.clarity;
  j["Significance"] = review.ratings.significance;
  j["Soundness"] = review.ratings.soundness;
  j["Presentation"] = review.ratings.presentation;
  j["Contribution"] = review.ratings.contribution;
  j["Overall"] = review.overall;
  j["Confidence"] = review.confidence;
  j["Decision"] = review.decision == Decision::Accept ? "Accept" : "Reject";
  return j.dump(2);
}

std::string render_structured_response(const StructuredReview& review,
                                       std::string_view thought) {
  std::string out = "THOUGHT:\n";
  out += thought;
  out += "\n\nREVIEW JSON:\n```json\n";
  out += structured_review_json(review);
  out += "\n```\n";
  return out;
}

std::string render_judge_response(const JudgeVerdict& verdict) {
  ordered_json j;
  j["Result"] = std::string(to_string(verdict.decision));
  j["Rationale"] = verdict.rationale;
  return "```json\n" + j.dump(2) + "\n```";
}

}  // namespace revdetect::llm
