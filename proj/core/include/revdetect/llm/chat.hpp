#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "revdetect/llm/provider.hpp"

namespace revdetect::llm {

struct ChatRequest {
  std::string model_ref;
  std::string system_prompt;
  std::string user_prompt;
  double temperature = 0.0;
  int max_output_tokens = 4096;
  std::optional<long long> seed;

  // Throws InvalidArgument on empty prompts, negative temperature or a
  // non-positive token limit.
  void validate() const;
};

// A chat-completion backend. Implementations must be safe to call from
// several threads at once.
class ChatModel {
 public:
  virtual ~ChatModel() = default;
  // Returns the assistant message text verbatim.
  virtual std::string complete(const ChatRequest& request) = 0;
  virtual std::string model_ref() const = 0;
};

class TranscriptLog;

// OpenAI-compatible `/chat/completions` client with retries. Authentication
// failures and refusals are never retried.
class HttpChatModel : public ChatModel {
 public:
  HttpChatModel(EndpointConfig endpoint, std::shared_ptr<HttpTransport> transport,
                Sleeper sleep = real_sleeper(),
                std::shared_ptr<TranscriptLog> transcripts = nullptr);

  std::string complete(const ChatRequest& request) override;
  std::string model_ref() const override { return endpoint_.model_ref; }

  // Request body for `request`, exposed for wire-format tests.
  static std::string encode_request(const ChatRequest& request);
  // Extracts the message text; throws ProviderError(Refusal/Malformed).
  static std::string decode_response(const std::string& body);

 private:
  EndpointConfig endpoint_;
  std::shared_ptr<HttpTransport> transport_;
  Sleeper sleep_;
  std::shared_ptr<TranscriptLog> transcripts_;
};

// Appends one JSON line per completed chat call for later audit.
class TranscriptLog {
 public:
  explicit TranscriptLog(std::string path);
  void append(const ChatRequest& request, const std::string& response);

 private:
  std::string path_;
  std::mutex mu_;
};

}  // namespace revdetect::llm
