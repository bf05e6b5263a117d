#include "revdetect/offline/providers.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>

#include "revdetect/llm/parse.hpp"
#include "revdetect/llm/prompts.hpp"
#include "revdetect/util/strings.hpp"

namespace revdetect::offline {
namespace {

constexpr std::array<std::string_view, 20> kLexicon = {
    "comprehensive", "novel",       "robust",     "furthermore", "additionally",
    "notably",       "overall",     "innovative", "significant", "thorough",
    "valuable",      "insights",    "framework",  "enhance",     "leverages",
    "demonstrates",  "potential",   "promising",  "rigorous",    "contribution"};

std::vector<std::string> words(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  for (char c : text) {
    if (std::isalpha(static_cast<unsigned char>(c))) {
      current += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (!current.empty()) {
      out.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

bool in_lexicon(std::string_view word) {
  return std::find(kLexicon.begin(), kLexicon.end(), word) != kLexicon.end();
}

// Content of the first fenced block, or the whole text.
std::string_view fenced_payload(std::string_view prompt) {
  const auto open = prompt.find("```\n");
  if (open == std::string_view::npos) return prompt;
  const auto close = prompt.rfind("\n```");
  if (close == std::string_view::npos || close <= open + 4) return prompt;
  return prompt.substr(open + 4, close - open - 4);
}

std::string topic_of(std::string_view body) {
  // First heading or first line of the manuscript, lowercased.
  for (const auto& line : util::split(body, '\n')) {
    std::string_view t = util::trim(line);
    while (!t.empty() && t.front() == '#') t.remove_prefix(1);
    t = util::trim(t);
    if (!t.empty()) return util::ascii_lower(t.substr(0, 80));
  }
  return "the studied problem";
}

template <std::size_t N>
std::string_view pick(const std::array<std::string_view, N>& pool, std::uint64_t h, int salt) {
  return pool[(h >> (salt * 5)) % N];
}

constexpr std::array<std::string_view, 4> kStrengths = {
    "The paper presents a novel and comprehensive framework with significant potential.",
    "The experiments are thorough and the results are promising.",
    "The writing is clear and the contribution is valuable to the community.",
    "The method leverages a robust design that demonstrates consistent gains."};
constexpr std::array<std::string_view, 4> kWeaknesses = {
    "The evaluation could be more comprehensive, notably on larger benchmarks.",
    "Additionally, the ablation studies do not fully isolate the contribution of each component.",
    "The paper would benefit from a more rigorous comparison with recent baselines.",
    "Furthermore, the computational overhead of the framework is not discussed."};
constexpr std::array<std::string_view, 3> kQuestions = {
    "How does the approach scale to significantly larger datasets?",
    "Could the authors provide additional insights into the failure cases?",
    "How sensitive is the framework to its main hyperparameters?"};
constexpr std::array<std::string_view, 3> kLimitations = {
    "The method may not generalize to domains with limited data.",
    "The potential societal impact of misuse is not thoroughly discussed.",
    "Overall, the analysis relies on a small number of settings."};

}  // namespace

std::span<const std::string_view> ai_style_lexicon() { return kLexicon; }

std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed) {
  std::uint64_t h = 14695981039346656037ull ^ seed;
  for (char c : data) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

double ai_style_density(std::string_view text) {
  const auto tokens = words(text);
  if (tokens.empty()) return 0.0;
  const auto hits = std::count_if(tokens.begin(), tokens.end(),
                                  [](const std::string& w) { return in_lexicon(w); });
  return static_cast<double>(hits) / static_cast<double>(tokens.size());
}

OfflineChatModel::OfflineChatModel(std::string model_ref, std::uint64_t seed)
    : model_ref_(std::move(model_ref)), seed_(seed) {}

std::string OfflineChatModel::complete(const llm::ChatRequest& request) {
  request.validate();
  const std::uint64_t h = fnv1a64(request.user_prompt,
                                  fnv1a64(model_ref_, seed_ ^ static_cast<std::uint64_t>(
                                                              request.seed.value_or(0))));

  if (request.system_prompt == llm::judge_system_prompt()) {
    const std::string_view review = fenced_payload(request.user_prompt);
    const double density = ai_style_density(review);
    std::set<std::string> cues;
    for (const auto& w : words(review)) {
      if (in_lexicon(w)) cues.insert(w);
    }
    llm::JudgeVerdict verdict;
    verdict.decision = density >= 0.05 ? Label::AI : Label::Human;
    if (cues.empty()) {
      verdict.rationale = "The text reads as a specific, conversational critique with no stock phrasing.";
    } else {
      verdict.rationale = "Stock evaluative phrasing density " + util::fixed(density, 3) + " (";
      bool first = true;
      for (const auto& c : cues) {
        verdict.rationale += (first ? "" : ", ") + c;
        first = false;
      }
      verdict.rationale += ").";
    }
    return llm::render_judge_response(verdict);
  }

  const std::string topic = topic_of(fenced_payload(request.user_prompt));
  const bool generation =
      request.system_prompt.starts_with("You are an AI researcher tasked with reviewing");
  if (!generation) {
    std::string out = "Summary: This paper presents a comprehensive framework for " + topic +
                      ". The authors propose a novel approach and provide thorough experiments.\n\n";
    out += "Strengths: ";
    out += pick(kStrengths, h, 0);
    out += "\n\nWeaknesses: ";
    out += pick(kWeaknesses, h, 1);
    out += "\n\nOverall, the work offers valuable insights into " + topic + ".";
    return out;
  }

  llm::StructuredReview review;
  const bool accept =
      request.system_prompt.find("You highly value novelty") != std::string::npos ||
      (request.system_prompt.find("You provide fair, balanced") != std::string::npos && (h & 1));
  review.summary = "This paper presents a comprehensive framework for " + topic +
                   ". The authors propose a novel approach and provide thorough experiments. "
                   "Overall, the contribution is " +
                   std::string(accept ? "significant, and I recommend acceptance."
                                      : "promising but not yet sufficient, and I recommend rejection.");
  review.strengths = {std::string(pick(kStrengths, h, 0)), std::string(pick(kStrengths, h, 1))};
  review.weaknesses = {std::string(pick(kWeaknesses, h, 2)), std::string(pick(kWeaknesses, h, 3))};
  review.questions = {std::string(pick(kQuestions, h, 4))};
  review.limitations = {std::string(pick(kLimitations, h, 5))};
  review.ethical_concerns = false;
  review.ratings = {3, 3, 3, accept ? 3 : 2, 3, 3, accept ? 3 : 2};
  review.overall = accept ? 7 : 4;
  review.confidence = 4;
  review.decision = accept ? llm::Decision::Accept : llm::Decision::Reject;
  return llm::render_structured_response(
      review, "The paper addresses " + topic + "; the main question is whether the evidence is sufficient.");
}

HashingEmbeddingProvider::HashingEmbeddingProvider(std::size_t dim) : dim_(dim) {
  if (dim_ == 0) throw InvalidArgument("hashing embedder needs dim >= 1");
}

std::string HashingEmbeddingProvider::model_ref() const {
  return "hashing-" + std::to_string(dim_);
}

std::vector<double> HashingEmbeddingProvider::embed_raw(const std::string& text) {
  std::vector<double> v(dim_, 0.0);
  for (const auto& w : words(text)) {
    const std::uint64_t h = fnv1a64(w);
    v[h % dim_] += (h >> 63) ? -1.0 : 1.0;
  }
  return v;
}

std::vector<double> OfflineSentenceScorer::score(std::span<const std::string> sentences) {
  std::vector<double> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) {
    const double jitter = static_cast<double>(fnv1a64(s) % 100) / 1000.0;
    out.push_back(std::clamp(ai_style_density(s) * 5.0 + jitter, 0.0, 1.0));
  }
  return out;
}

double OfflineScoreApi::score(const std::string& text) {
  return std::clamp(ai_style_density(text) * 6.0, 0.0, 1.0);
}

}  // namespace revdetect::offline
