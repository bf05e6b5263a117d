#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>

#include "revdetect/error.hpp"

namespace revdetect::llm {

enum class ProviderErrorKind {
  Network,     // connection failure or timeout
  RateLimited, // HTTP 429
  Server,      // HTTP 5xx
  Auth,        // HTTP 401/403 or missing credential
  Refusal,     // provider declined to answer
  Http,        // any other non-success status
  Malformed,   // response body not in the expected shape
};

std::string_view to_string(ProviderErrorKind kind);

class ProviderError : public Error {
 public:
  ProviderError(ProviderErrorKind kind, const std::string& what,
                int http_status = 0)
      : Error(what), kind_(kind), http_status_(http_status) {}

  ProviderErrorKind kind() const noexcept { return kind_; }
  int http_status() const noexcept { return http_status_; }
  // Timeouts, connection errors, 429 and 5xx.
  bool retryable() const noexcept {
    return kind_ == ProviderErrorKind::Network ||
           kind_ == ProviderErrorKind::RateLimited ||
           kind_ == ProviderErrorKind::Server;
  }

 private:
  ProviderErrorKind kind_;
  int http_status_;
};

// Maps a non-2xx status to the error kind used for retry decisions.
ProviderErrorKind classify_http_status(int status);

// Exponential backoff. `max_attempts` counts the first call.
struct RetryPolicy {
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{500};
  double multiplier = 2.0;
  std::chrono::milliseconds max_backoff{8000};

  // Delay before attempt `attempt + 1`, for attempt >= 1.
  std::chrono::milliseconds delay_after(int attempt) const;
};

using Sleeper = std::function<void(std::chrono::milliseconds)>;
Sleeper real_sleeper();

// Calls `fn` until it succeeds, throws a non-retryable ProviderError, or the
// attempt budget is spent. Only ProviderError is intercepted.
template <typename Fn>
auto with_retries(const RetryPolicy& policy, const Sleeper& sleep, Fn&& fn)
    -> decltype(fn()) {
  const int attempts = policy.max_attempts < 1 ? 1 : policy.max_attempts;
  for (int attempt = 1;; ++attempt) {
    try {
      return fn();
    } catch (const ProviderError& e) {
      if (!e.retryable()) throw;
      if (attempt >= attempts) {
        throw ProviderError(e.kind(),
                            std::string(e.what()) + " (gave up after " +
                                std::to_string(attempt) + " attempts)",
                            e.http_status());
      }
      if (sleep) sleep(policy.delay_after(attempt));
    }
  }
}

struct HttpResponse {
  int status = 0;
  std::string body;
};

using HttpHeaders = std::multimap<std::string, std::string>;

// POSTs JSON to a path relative to the endpoint's base URL. Throws
// ProviderError(Network) on connection failures and timeouts; HTTP error
// statuses are returned, not thrown.
class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  virtual HttpResponse post_json(const std::string& path,
                                 const std::string& body,
                                 const HttpHeaders& headers) = 0;
};

// Endpoint settings shared by chat, embedding, classifier and score-API
// providers. Read from one section of the run config file.
struct EndpointConfig {
  std::string provider = "offline";  // "offline" or "openai"/"http"
  std::string base_url;
  std::string model_ref;
  std::string credential_env;  // name of the env var holding the API key
  std::chrono::milliseconds timeout{60000};
  int max_in_flight = 4;
  RetryPolicy retry;
  std::string path;  // request path override (score APIs)
};

// Builds a transport for `base_url` (http or https). Connection state is not
// shared between calls, so one instance may be used from several threads.
std::unique_ptr<HttpTransport> make_http_transport(
    const std::string& base_url, std::chrono::milliseconds timeout);

// Reads the credential named by `credential_env`. Returns an empty string when
// no variable is configured; throws ProviderError(Auth) when it is configured
// but unset.
std::string resolve_credential(const EndpointConfig& endpoint);

// Sends `body` with retries and returns the 2xx response body; non-2xx
// statuses become ProviderError.
std::string post_with_retries(HttpTransport& transport,
                              const EndpointConfig& endpoint,
                              const std::string& path, const std::string& body,
                              const Sleeper& sleep);

}  // namespace revdetect::llm
