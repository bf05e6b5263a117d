#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "revdetect/detectors/detector.hpp"
#include "revdetect/llm/chat.hpp"
#include "revdetect/llm/provider.hpp"

namespace revdetect::detectors {

// --- Sentence-averaged classifier -----------------------------------------

// Supplies an AI probability for each sentence (e.g. a fine-tuned
// RoBERTa/Longformer model served elsewhere).
class SentenceScorer {
 public:
  virtual ~SentenceScorer() = default;
  virtual std::vector<double> score(std::span<const std::string> sentences) = 0;
  virtual std::string id() const = 0;
};

// POSTs {"model": ..., "sentences": [...]} and expects {"scores": [...]}.
class HttpSentenceScorer : public SentenceScorer {
 public:
  HttpSentenceScorer(llm::EndpointConfig endpoint, std::shared_ptr<llm::HttpTransport> transport,
                     llm::Sleeper sleep = llm::real_sleeper());
  std::vector<double> score(std::span<const std::string> sentences) override;
  std::string id() const override { return endpoint_.model_ref; }

 private:
  llm::EndpointConfig endpoint_;
  std::shared_ptr<llm::HttpTransport> transport_;
  llm::Sleeper sleep_;
};

// Arithmetic mean, accumulated left to right in double precision. Throws
// InvalidArgument for an empty list or a value outside [0, 1].
double average_sentence_scores(std::span<const double> per_sentence);

// Splits the review into sentences, scores each and averages. Throws
// InvalidArgument when the review has no sentences.
DetectionScore classifier_detect(std::string_view review_text, SentenceScorer& scorer);

class ClassifierDetector : public Detector {
 public:
  explicit ClassifierDetector(std::shared_ptr<SentenceScorer> scorer);
  std::string id() const override { return "classifier:" + scorer_->id(); }
  DetectionScore detect(const DetectionInput& input) override;

 private:
  std::shared_ptr<SentenceScorer> scorer_;
};

// --- LLM judge --------------------------------------------------------------

// Score 1.0 for an AI verdict and 0.0 for human; decision and rationale are
// always set.
DetectionScore judge_detect(std::string_view review_text, llm::ChatModel& model);

class JudgeDetector : public Detector {
 public:
  explicit JudgeDetector(std::shared_ptr<llm::ChatModel> model);
  std::string id() const override { return "judge:" + model_->model_ref(); }
  bool binary_only() const override { return true; }
  DetectionScore detect(const DetectionInput& input) override;

 private:
  std::shared_ptr<llm::ChatModel> model_;
};

// --- External score API -----------------------------------------------------

// A remote service returning an AI score in [0, 1] for a whole text.
class ScoreApi {
 public:
  virtual ~ScoreApi() = default;
  virtual double score(const std::string& text) = 0;
  virtual std::string provider_id() const = 0;
};

// POSTs {"content": text} and reads the numeric "score" field of the reply.
class HttpScoreApi : public ScoreApi {
 public:
  HttpScoreApi(llm::EndpointConfig endpoint, std::shared_ptr<llm::HttpTransport> transport,
               llm::Sleeper sleep = llm::real_sleeper());
  double score(const std::string& text) override;
  std::string provider_id() const override { return endpoint_.model_ref; }

 private:
  llm::EndpointConfig endpoint_;
  std::shared_ptr<llm::HttpTransport> transport_;
  llm::Sleeper sleep_;
};

// Passes the remote score through as raw and score. A value outside [0, 1]
// is rejected with InvalidArgument, never clamped.
DetectionScore external_api_detect(std::string_view review_text, ScoreApi& api);

class ExternalApiDetector : public Detector {
 public:
  explicit ExternalApiDetector(std::shared_ptr<ScoreApi> api);
  std::string id() const override { return "api:" + api_->provider_id(); }
  DetectionScore detect(const DetectionInput& input) override;

 private:
  std::shared_ptr<ScoreApi> api_;
};

}  // namespace revdetect::detectors
