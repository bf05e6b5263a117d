#include "revdetect/llm/provider.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

#include <httplib.h>

namespace revdetect::llm {

std::string_view to_string(ProviderErrorKind kind) {
  switch (kind) {
    case ProviderErrorKind::Network:
      return "network";
    case ProviderErrorKind::RateLimited:
      return "rate-limited";
    case ProviderErrorKind::Server:
      return "server";
    case ProviderErrorKind::Auth:
      return "auth";
    case ProviderErrorKind::Refusal:
      return "refusal";
    case ProviderErrorKind::Http:
      return "http";
    case ProviderErrorKind::Malformed:
      return "malformed";
  }
  return "unknown";
}

ProviderErrorKind classify_http_status(int status) {
  if (status == 401 || status == 403) return ProviderErrorKind::Auth;
  if (status == 429) return ProviderErrorKind::RateLimited;
  if (status == 408) return ProviderErrorKind::Network;
  if (status >= 500) return ProviderErrorKind::Server;
  return ProviderErrorKind::Http;
}

std::chrono::milliseconds RetryPolicy::delay_after(int attempt) const {
  const double scaled = static_cast<double>(initial_backoff.count()) *
                        std::pow(multiplier, std::max(0, attempt - 1));
  const double capped = std::min(scaled, static_cast<double>(max_backoff.count()));
  return std::chrono::milliseconds(static_cast<long long>(capped));
}

Sleeper real_sleeper() {
  return [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

namespace {

class HttplibTransport : public HttpTransport {
 public:
  HttplibTransport(std::string origin, std::string prefix,
                   std::chrono::milliseconds timeout)
      : origin_(std::move(origin)), prefix_(std::move(prefix)), timeout_(timeout) {}

  HttpResponse post_json(const std::string& path, const std::string& body,
                         const HttpHeaders& headers) override {
    httplib::Client client(origin_);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout_);
    const auto usecs =
        std::chrono::duration_cast<std::chrono::microseconds>(timeout_ - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());

    httplib::Headers h(headers.begin(), headers.end());
    std::string full = prefix_;
    if (!path.empty()) {
      if (path.front() != '/') full += '/';
      full += path;
    }
    if (full.empty()) full = "/";
    auto result = client.Post(full, h, body, "application/json");
    if (!result) {
      throw ProviderError(ProviderErrorKind::Network,
                          "request to " + origin_ + full +
                              " failed: " + httplib::to_string(result.error()));
    }
    return {result->status, result->body};
  }

 private:
  std::string origin_;
  std::string prefix_;
  std::chrono::milliseconds timeout_;
};

}  // namespace

std::unique_ptr<HttpTransport> make_http_transport(
    const std::string& base_url, std::chrono::milliseconds timeout) {
  const auto scheme_end = base_url.find("://");
  if (scheme_end == std::string::npos) {
    throw InvalidArgument("base URL must include a scheme: '" + base_url + "'");
  }
  const auto path_start = base_url.find('/', scheme_end + 3);
  std::string origin = base_url.substr(0, path_start);
  std::string prefix =
      path_start == std::string::npos ? std::string() : base_url.substr(path_start);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return std::make_unique<HttplibTransport>(std::move(origin), std::move(prefix),
                                            timeout);
}

std::string resolve_credential(const EndpointConfig& endpoint) {
  if (endpoint.credential_env.empty()) return {};
  const char* value = std::getenv(endpoint.credential_env.c_str());
  if (value == nullptr || *value == '\0') {
    throw ProviderError(ProviderErrorKind::Auth,
                        "credential environment variable " +
                            endpoint.credential_env + " is not set");
  }
  return value;
}

std::string post_with_retries(HttpTransport& transport,
                              const EndpointConfig& endpoint,
                              const std::string& path, const std::string& body,
                              const Sleeper& sleep) {
  HttpHeaders headers;
  if (std::string key = resolve_credential(endpoint); !key.empty()) {
    headers.emplace("Authorization", "Bearer " + key);
  }
  return with_retries(endpoint.retry, sleep, [&] {
    HttpResponse response = transport.post_json(path, body, headers);
    if (response.status < 200 || response.status >= 300) {
      std::string snippet = response.body.substr(0, 200);
      throw ProviderError(classify_http_status(response.status),
                          "HTTP " + std::to_string(response.status) + ": " + snippet,
                          response.status);
    }
    return std::move(response.body);
  });
}

}  // namespace revdetect::llm
