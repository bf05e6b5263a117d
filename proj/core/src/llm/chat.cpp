#include "revdetect/llm/chat.hpp"

#include <chrono>
#include <fstream>

#include <json.hpp>

namespace revdetect::llm {

using json = nlohmann::json;

void ChatRequest::validate() const {
  if (system_prompt.empty() || user_prompt.empty()) {
    throw InvalidArgument("chat request prompts must be nonempty");
  }
  if (!(temperature >= 0.0)) throw InvalidArgument("temperature must be >= 0");
  if (max_output_tokens <= 0) throw InvalidArgument("max_output_tokens must be positive");
}

HttpChatModel::HttpChatModel(EndpointConfig endpoint,
                             std::shared_ptr<HttpTransport> transport, Sleeper sleep,
                             std::shared_ptr<TranscriptLog> transcripts)
    : endpoint_(std::move(endpoint)),
      transport_(std::move(transport)),
      sleep_(std::move(sleep)),
      transcripts_(std::move(transcripts)) {}

std::string HttpChatModel::encode_request(const ChatRequest& request) {
  json body{{"model", request.model_ref},
            {"messages",
             json::array({{{"role", "system"}, {"content", request.system_prompt}},
                          {{"role", "user"}, {"content", request.user_prompt}}})},
            {"temperature", request.temperature},
            {"max_tokens", request.max_output_tokens}};
  if (request.seed) body["seed"] = *request.seed;
  return body.dump();
}

std::string HttpChatModel::decode_response(const std::string& body) {
  json parsed;
  try {
    parsed = json::parse(body);
  } catch (const json::parse_error& e) {
    throw ProviderError(ProviderErrorKind::Malformed,
                        std::string("chat response is not JSON: ") + e.what());
  }
  const auto& choices = parsed.value("choices", json::array());
  if (!choices.is_array() || choices.empty() || !choices[0].is_object()) {
    throw ProviderError(ProviderErrorKind::Malformed, "chat response has no choices");
  }
  const json& choice = choices[0];
  if (choice.value("finish_reason", "") == "content_filter") {
    throw ProviderError(ProviderErrorKind::Refusal, "provider filtered the response");
  }
  const json message = choice.value("message", json::object());
  if (auto r = message.find("refusal"); r != message.end() && r->is_string()) {
    throw ProviderError(ProviderErrorKind::Refusal,
                        "provider refused: " + r->get<std::string>());
  }
  auto content = message.find("content");
  if (content == message.end() || !content->is_string()) {
    throw ProviderError(ProviderErrorKind::Malformed, "chat response has no message text");
  }
  return content->get<std::string>();
}

std::string HttpChatModel::complete(const ChatRequest& request) {
  request.validate();
  ChatRequest effective = request;
  if (effective.model_ref.empty()) effective.model_ref = endpoint_.model_ref;
  // Refusals and malformed bodies are not retryable, so decoding happens
  // outside the retry loop.
  const std::string body = post_with_retries(*transport_, endpoint_, "/chat/completions",
                                             encode_request(effective), sleep_);
  std::string text = decode_response(body);
  if (transcripts_) transcripts_->append(effective, text);
  return text;
}

TranscriptLog::TranscriptLog(std::string path) : path_(std::move(path)) {}

void TranscriptLog::append(const ChatRequest& request, const std::string& response) {
  const auto now = std::chrono::duration_cast<std::chrono::seconds>(
                       std::chrono::system_clock::now().time_since_epoch())
                       .count();
  json record{{"model_ref", request.model_ref},
              {"system_prompt", request.system_prompt},
              {"user_prompt", request.user_prompt},
              {"temperature", request.temperature},
              {"response", response},
              {"unix_time", now}};
  std::lock_guard lock(mu_);
  std::ofstream out(path_, std::ios::app | std::ios::binary);
  out << record.dump() << '\n';
}

}  // namespace revdetect::llm
