#include <gtest/gtest.h>

#include <atomic>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "revdetect/detectors/adapters.hpp"
#include "revdetect/embeddings/embedder.hpp"
#include "revdetect/llm/chat.hpp"

using namespace revdetect;
using json = nlohmann::json;

namespace {

// Local OpenAI-compatible stub on an ephemeral port.
class StubServer {
 public:
  std::atomic<int> chat_calls{0};
  std::atomic<int> failures_before_success{0};
  std::string last_authorization;

  StubServer() {
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
      ++chat_calls;
      last_authorization = req.get_header_value("Authorization");
      if (failures_before_success > 0) {
        --failures_before_success;
        res.status = 503;
        return;
      }
      const auto body = json::parse(req.body);
      const std::string reply = "echo:" + body["messages"][1]["content"].get<std::string>();
      res.set_content(json{{"choices", {{{"message", {{"content", reply}}}, {"finish_reason", "stop"}}}}}.dump(),
                      "application/json");
    });
    server_.Post("/v1/embeddings", [](const httplib::Request& req, httplib::Response& res) {
      const auto body = json::parse(req.body);
      const double n = static_cast<double>(body["input"].get<std::string>().size());
      res.set_content(json{{"data", {{{"embedding", {n, 1.0, 0.5}}}}}}.dump(), "application/json");
    });
    server_.Post("/score", [](const httplib::Request& req, httplib::Response& res) {
      const auto body = json::parse(req.body);
      res.set_content(json{{"score", body["content"] == "high" ? 0.73 : 1.2}}.dump(),
                      "application/json");
    });
    server_.Post("/classify", [](const httplib::Request& req, httplib::Response& res) {
      const auto body = json::parse(req.body);
      json scores = json::array();
      for (std::size_t i = 0; i < body["sentences"].size(); ++i) scores.push_back(0.25 * (i + 1));
      res.set_content(json{{"scores", scores}}.dump(), "application/json");
    });
    server_.Post("/denied/chat/completions", [](const httplib::Request&, httplib::Response& res) {
      res.status = 401;
    });
    server_.Post("/slow/score", [](const httplib::Request&, httplib::Response& res) {
      std::this_thread::sleep_for(std::chrono::milliseconds(600));
      res.set_content("{\"score\":0.5}", "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~StubServer() {
    server_.stop();
    thread_.join();
  }
  std::string url(const std::string& prefix = "") const {
    return "http://127.0.0.1:" + std::to_string(port_) + prefix;
  }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

llm::EndpointConfig endpoint(const std::string& base_url) {
  llm::EndpointConfig e;
  e.provider = "openai";
  e.base_url = base_url;
  e.model_ref = "stub-model";
  e.timeout = std::chrono::milliseconds(2000);
  e.retry.initial_backoff = std::chrono::milliseconds(1);
  return e;
}

std::shared_ptr<llm::HttpTransport> transport(const llm::EndpointConfig& e) {
  return llm::make_http_transport(e.base_url, e.timeout);
}

llm::ChatRequest request() {
  llm::ChatRequest r;
  r.model_ref = "stub-model";
  r.system_prompt = "s";
  r.user_prompt = "hi";
  return r;
}

}  // namespace

TEST(Http, ChatRoundTripWithCredentialHeader) {
  StubServer server;
  auto e = endpoint(server.url("/v1"));
  e.credential_env = "REVDETECT_HTTP_TEST_KEY";
  ::setenv("REVDETECT_HTTP_TEST_KEY", "k123", 1);
  llm::HttpChatModel model(e, transport(e));
  EXPECT_EQ(model.complete(request()), "echo:hi");
  EXPECT_EQ(server.last_authorization, "Bearer k123");
  ::unsetenv("REVDETECT_HTTP_TEST_KEY");
}

TEST(Http, ServerErrorsAreRetried) {
  StubServer server;
  server.failures_before_success = 2;
  const auto e = endpoint(server.url("/v1"));
  llm::HttpChatModel model(e, transport(e));
  EXPECT_EQ(model.complete(request()), "echo:hi");
  EXPECT_EQ(server.chat_calls, 3);
}

TEST(Http, UnauthorizedIsNotRetried) {
  StubServer server;
  const auto e = endpoint(server.url("/denied"));
  llm::HttpChatModel model(e, transport(e));
  try {
    model.complete(request());
    FAIL();
  } catch (const llm::ProviderError& err) {
    EXPECT_EQ(err.kind(), llm::ProviderErrorKind::Auth);
    EXPECT_EQ(err.http_status(), 401);
  }
}

TEST(Http, EmbeddingsEndpoint) {
  StubServer server;
  const auto e = endpoint(server.url("/v1"));
  embeddings::HttpEmbeddingProvider provider(e, transport(e));
  EXPECT_EQ(provider.embed_raw("abcd"), (std::vector<double>{4.0, 1.0, 0.5}));
  EXPECT_EQ(provider.provider_id(), "openai");
}

TEST(Http, ScoreApiAndRangeCheck) {
  StubServer server;
  const auto e = endpoint(server.url());
  detectors::HttpScoreApi api(e, transport(e));
  EXPECT_DOUBLE_EQ(detectors::external_api_detect("high", api).score, 0.73);
  EXPECT_THROW(detectors::external_api_detect("other", api), InvalidArgument);
}

TEST(Http, ScoreApiTimeoutIsNetworkError) {
  StubServer server;
  auto e = endpoint(server.url("/slow"));
  e.timeout = std::chrono::milliseconds(150);
  e.retry.max_attempts = 1;
  detectors::HttpScoreApi api(e, transport(e));
  try {
    api.score("x");
    FAIL();
  } catch (const llm::ProviderError& err) {
    EXPECT_EQ(err.kind(), llm::ProviderErrorKind::Network);
  }
}

TEST(Http, SentenceScorerEndpoint) {
  StubServer server;
  auto e = endpoint(server.url());
  e.path = "/classify";
  auto scorer = std::make_shared<detectors::HttpSentenceScorer>(e, transport(e));
  const auto s = detectors::classifier_detect("One sentence. Two sentences. Three.", *scorer);
  EXPECT_DOUBLE_EQ(s.score, (0.25 + 0.5 + 0.75) / 3.0);
}

TEST(Http, ConnectionRefusedIsNetworkError) {
  int port;
  {
    httplib::Server probe;
    port = probe.bind_to_any_port("127.0.0.1");
  }
  auto e = endpoint("http://127.0.0.1:" + std::to_string(port) + "/v1");
  e.retry.max_attempts = 2;
  llm::HttpChatModel model(e, transport(e), [](auto) {});
  try {
    model.complete(request());
    FAIL();
  } catch (const llm::ProviderError& err) {
    EXPECT_EQ(err.kind(), llm::ProviderErrorKind::Network);
  }
}

TEST(Http, BaseUrlNeedsScheme) {
  EXPECT_THROW(llm::make_http_transport("localhost:8080", std::chrono::seconds(1)),
               InvalidArgument);
}
