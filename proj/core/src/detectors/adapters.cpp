#include "revdetect/detectors/adapters.hpp"

#include <cmath>

#include <json.hpp>

#include "revdetect/corpus/text.hpp"
#include "revdetect/error.hpp"
#include "revdetect/llm/parse.hpp"
#include "revdetect/llm/prompts.hpp"
#include "revdetect/util/strings.hpp"

namespace revdetect::detectors {

using json = nlohmann::json;

HttpSentenceScorer::HttpSentenceScorer(llm::EndpointConfig endpoint,
                                       std::shared_ptr<llm::HttpTransport> transport,
                                       llm::Sleeper sleep)
    : endpoint_(std::move(endpoint)), transport_(std::move(transport)), sleep_(std::move(sleep)) {}

std::vector<double> HttpSentenceScorer::score(std::span<const std::string> sentences) {
  const json request{{"model", endpoint_.model_ref},
                     {"sentences", std::vector<std::string>(sentences.begin(), sentences.end())}};
  const std::string path = endpoint_.path.empty() ? "/score-sentences" : endpoint_.path;
  const std::string body =
      llm::post_with_retries(*transport_, endpoint_, path, request.dump(), sleep_);
  try {
    return json::parse(body).at("scores").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw llm::ProviderError(llm::ProviderErrorKind::Malformed,
                             std::string("sentence scorer response: ") + e.what());
  }
}

double average_sentence_scores(std::span<const double> per_sentence) {
  if (per_sentence.empty()) throw InvalidArgument("no sentence scores to average");
  double sum = 0.0;
  for (double p : per_sentence) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("sentence score outside [0, 1]");
    sum += p;
  }
  return sum / static_cast<double>(per_sentence.size());
}

DetectionScore classifier_detect(std::string_view review_text, SentenceScorer& scorer) {
  const auto sentences = corpus::split_sentences(review_text);
  if (sentences.empty()) throw InvalidArgument("review has no sentences");
  const auto scores = scorer.score(sentences);
  if (scores.size() != sentences.size()) {
    throw llm::ProviderError(llm::ProviderErrorKind::Malformed,
                             "sentence scorer returned " + std::to_string(scores.size()) +
                                 " scores for " + std::to_string(sentences.size()) + " sentences");
  }
  DetectionScore out;
  out.detector_id = "classifier:" + scorer.id();
  out.score = average_sentence_scores(scores);
  out.raw = out.score;
  return out;
}

ClassifierDetector::ClassifierDetector(std::shared_ptr<SentenceScorer> scorer)
    : scorer_(std::move(scorer)) {}

DetectionScore ClassifierDetector::detect(const DetectionInput& input) {
  DetectionScore out = classifier_detect(input.text, *scorer_);
  out.review_id = input.review_id;
  return out;
}

DetectionScore judge_detect(std::string_view review_text, llm::ChatModel& model) {
  const auto request = llm::render_judge_prompt(review_text, model.model_ref());
  const llm::JudgeVerdict verdict = llm::parse_judge_verdict(model.complete(request));
  DetectionScore out;
  out.detector_id = "judge:" + model.model_ref();
  out.score = verdict.decision == Label::AI ? 1.0 : 0.0;
  out.raw = out.score;
  out.decision = verdict.decision;
  out.rationale = verdict.rationale;
  return out;
}

JudgeDetector::JudgeDetector(std::shared_ptr<llm::ChatModel> model) : model_(std::move(model)) {}

DetectionScore JudgeDetector::detect(const DetectionInput& input) {
  DetectionScore out = judge_detect(input.text, *model_);
  out.review_id = input.review_id;
  return out;
}

HttpScoreApi::HttpScoreApi(llm::EndpointConfig endpoint,
                           std::shared_ptr<llm::HttpTransport> transport, llm::Sleeper sleep)
    : endpoint_(std::move(endpoint)), transport_(std::move(transport)), sleep_(std::move(sleep)) {}

double HttpScoreApi::score(const std::string& text) {
  const json request{{"content", text}};
  const std::string path = endpoint_.path.empty() ? "/score" : endpoint_.path;
  const std::string body =
      llm::post_with_retries(*transport_, endpoint_, path, request.dump(), sleep_);
  try {
    return json::parse(body).at("score").get<double>();
  } catch (const json::exception& e) {
    throw llm::ProviderError(llm::ProviderErrorKind::Malformed,
                             std::string("score API response: ") + e.what());
  }
}

DetectionScore external_api_detect(std::string_view review_text, ScoreApi& api) {
  if (util::trim(review_text).empty()) throw InvalidArgument("review text is empty");
  const double value = api.score(std::string(review_text));
  if (!(value >= 0.0 && value <= 1.0)) {
    throw InvalidArgument("score API returned " + std::to_string(value) + ", outside [0, 1]");
  }
  DetectionScore out;
  out.detector_id = "api:" + api.provider_id();
  out.raw = value;
  out.score = value;
  return out;
}

ExternalApiDetector::ExternalApiDetector(std::shared_ptr<ScoreApi> api) : api_(std::move(api)) {}

DetectionScore ExternalApiDetector::detect(const DetectionInput& input) {
  DetectionScore out = external_api_detect(input.text, *api_);
  out.review_id = input.review_id;
  return out;
}

}  // namespace revdetect::detectors
