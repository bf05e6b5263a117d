#include <gtest/gtest.h>

#include <json.hpp>

#include "revdetect/corpus/ingest.hpp"
#include "revdetect/error.hpp"
#include "revdetect/llm/chat.hpp"
#include "revdetect/llm/generate.hpp"
#include "revdetect/llm/parse.hpp"
#include "revdetect/llm/prompts.hpp"
#include "revdetect/llm/provider.hpp"
#include "test_support.hpp"

using namespace revdetect;
using namespace revdetect::llm;
using revdetect::testing::golden;
using revdetect::testing::ScriptedChatModel;

namespace {

corpus::Paper fixture_paper() {
  corpus::Paper p;
  p.id = "p1";
  p.venue = "ICLR";
  p.year = 2024;
  p.title = "Anchors";
  p.body = golden("fixture_paper_body.md");
  return p;
}

std::string llm_data(const std::string& name) {
  return util::read_file(revdetect::testing::data_dir() / "llm" / name);
}

nlohmann::ordered_json valid_review_json() {
  const std::string raw = llm_data("structured_review_valid.txt");
  return nlohmann::ordered_json::parse(*last_json_block(raw));
}

std::string fenced(const nlohmann::ordered_json& j) { return "```json\n" + j.dump(2) + "\n```\n"; }

StructuredReview sample_review(int variant) {
  StructuredReview r;
  r.summary = "Summary " + std::to_string(variant) + " with \"quotes\" and a \\ backslash.";
  r.strengths = {"S" + std::to_string(variant)};
  r.weaknesses = {"W1", "W2 ```not a fence```"};
  r.questions = {};
  r.limitations = {"L"};
  r.ethical_concerns = variant % 2 == 0;
  r.ratings = {1 + variant % 4, 2, 3, 4, 1 + (variant / 2) % 4, 2, 3};
  r.overall = 1 + variant % 10;
  r.confidence = 1 + variant % 5;
  r.decision = variant % 3 == 0 ? Decision::Accept : Decision::Reject;
  return r;
}

// Transport replaying scripted responses and recording requests.
class ScriptedTransport : public HttpTransport {
 public:
  std::vector<std::function<HttpResponse()>> script;
  std::vector<std::pair<std::string, HttpHeaders>> requests;
  HttpResponse post_json(const std::string& path, const std::string&,
                         const HttpHeaders& headers) override {
    requests.emplace_back(path, headers);
    const std::size_t i = std::min(requests.size() - 1, script.size() - 1);
    return script[i]();
  }
};

std::string completion_body(const std::string& content, const std::string& finish = "stop") {
  return nlohmann::json{{"choices", {{{"message", {{"role", "assistant"}, {"content", content}}},
                                       {"finish_reason", finish}}}}}
      .dump();
}

ChatRequest simple_request() {
  ChatRequest r;
  r.model_ref = "m";
  r.system_prompt = "sys";
  r.user_prompt = "user";
  return r;
}

EndpointConfig endpoint_with_retries(int attempts) {
  EndpointConfig e;
  e.provider = "openai";
  e.base_url = "http://unused";
  e.model_ref = "m";
  e.retry.max_attempts = attempts;
  return e;
}

}  // namespace

// --- prompt fidelity ---------------------------------------------------------

TEST(Prompts, GenerationSystemPromptsMatchGoldens) {
  const std::pair<corpus::Archetype, const char*> cases[] = {
      {corpus::Archetype::Balanced, "generation_system_balanced.txt"},
      {corpus::Archetype::Nitpicky, "generation_system_nitpicky.txt"},
      {corpus::Archetype::Innovative, "generation_system_innovative.txt"},
      {corpus::Archetype::Conservative, "generation_system_conservative.txt"}};
  for (const auto& [archetype, file] : cases) {
    const auto request = render_generation_prompt(fixture_paper(), archetype, llm::default_review_guideline(), "gpt-4o");
    EXPECT_EQ(request.system_prompt, golden(file)) << file;
    EXPECT_EQ(request.user_prompt, golden("generation_user_fixture.txt"));
    EXPECT_EQ(request.temperature, kGenerationTemperature);
  }
}

TEST(Prompts, PersonaParagraphsAreVerbatim) {
  const auto balanced =
      render_generation_prompt(fixture_paper(), corpus::Archetype::Balanced, llm::default_review_guideline(), "m");
  EXPECT_NE(balanced.system_prompt.find("You provide fair, balanced, thorough"), std::string::npos);
  const auto nitpicky =
      render_generation_prompt(fixture_paper(), corpus::Archetype::Nitpicky, llm::default_review_guideline(), "m");
  EXPECT_NE(nitpicky.system_prompt.find("You are a perfectionist"), std::string::npos);
}

TEST(Prompts, DefaultGuidelineMatchesGolden) {
  EXPECT_EQ(default_review_guideline(), golden("iclr2022_guideline.txt"));
}

TEST(Prompts, CustomGuidelineIsSubstituted) {
  const auto r = render_generation_prompt(fixture_paper(), corpus::Archetype::Balanced,
                                          "Be brief. {text} stays literal.", "m");
  EXPECT_NE(r.system_prompt.find("Be brief. {text} stays literal."), std::string::npos);
  EXPECT_EQ(r.system_prompt.find("Step-by-step Review Instructions"), std::string::npos);
}

TEST(Prompts, JudgePromptMatchesGoldens) {
  const auto r = render_judge_prompt(golden("fixture_review.txt"), "gpt-4o");
  EXPECT_EQ(r.system_prompt, golden("judge_system.txt"));
  EXPECT_EQ(r.user_prompt, golden("judge_user_fixture.txt"));
  EXPECT_EQ(r.temperature, kDeterministicTemperature);
}

TEST(Prompts, EmptyBodyIsRejected) {
  auto p = fixture_paper();
  p.body.clear();
  EXPECT_THROW(render_generation_prompt(p, corpus::Archetype::Balanced, llm::default_review_guideline(), "m"), InvalidArgument);
  EXPECT_THROW(render_anchor_prompt(p, "m"), InvalidArgument);
}

TEST(Prompts, AnchorPromptEndsWithFencedBodyAndOmitsPersonas) {
  const auto p = fixture_paper();
  const auto anchor = render_anchor_prompt(p, "m");
  const std::string suffix = "```\n" + p.body + "\n```";
  ASSERT_GE(anchor.user_prompt.size(), suffix.size());
  EXPECT_EQ(anchor.user_prompt.substr(anchor.user_prompt.size() - suffix.size()), suffix);
  EXPECT_TRUE(anchor.user_prompt.starts_with("Write a peer review of the following paper."));
  for (auto a : corpus::kAllArchetypes) {
    EXPECT_EQ(anchor.system_prompt.find(archetype_persona(a)), std::string::npos);
    EXPECT_EQ(anchor.user_prompt.find(archetype_persona(a)), std::string::npos);
  }
  EXPECT_EQ(anchor.user_prompt.find("Step-by-step Review Instructions"), std::string::npos);
  const auto generation = render_generation_prompt(p, corpus::Archetype::Balanced, llm::default_review_guideline(), "m");
  EXPECT_NE(anchor.system_prompt, generation.system_prompt);
  EXPECT_EQ(anchor.temperature, kDeterministicTemperature);
}

TEST(Prompts, EmptyGuidelineIsRejected) {
  EXPECT_THROW(render_generation_prompt(fixture_paper(), corpus::Archetype::Balanced, "", "m"),
               InvalidArgument);
}

TEST(Prompts, OneCharacterBodyIsValid) {
  auto p = fixture_paper();
  p.body = "x";
  EXPECT_NO_THROW(render_anchor_prompt(p, "m").validate());
}

TEST(Prompts, FillTemplateIsSinglePass) {
  EXPECT_EQ(fill_template("{a}-{b}-{c}", {{"a", "{b}"}, {"b", "B"}}), "{b}-B-{c}");
}

// --- structured review parsing -----------------------------------------------

TEST(StructuredReviewParse, ValidFixture) {
  const auto r = parse_structured_review(llm_data("structured_review_valid.txt"));
  EXPECT_EQ(r.decision, Decision::Accept);
  EXPECT_EQ(r.strengths.size(), 2u);
  EXPECT_EQ(r.ratings.clarity, 4);
  EXPECT_EQ(r.overall, 7);
  EXPECT_FALSE(r.ethical_concerns);
  const auto sections = r.to_sections();
  ASSERT_EQ(sections.size(), 5u);
  EXPECT_EQ(sections[0].name, "Summary");
  EXPECT_EQ(sections[4].name, "Limitations");
}

TEST(StructuredReviewParse, LastFencedBlockWins) {
  const auto r = parse_structured_review(llm_data("structured_review_echoed_template.txt"));
  EXPECT_EQ(r.decision, Decision::Reject);
  EXPECT_TRUE(r.ethical_concerns);
}

TEST(StructuredReviewParse, WeakAcceptIsRejected) {
  auto j = valid_review_json();
  j["Decision"] = "Weak Accept";
  EXPECT_THROW(parse_structured_review(fenced(j)), ParseError);
  for (const char* bad : {"Borderline Accept", "Borderline Reject", "Strong Reject", "accept"}) {
    j["Decision"] = bad;
    EXPECT_THROW(parse_structured_review(fenced(j)), ParseError) << bad;
  }
}

TEST(StructuredReviewParse, NoFencedBlock) {
  EXPECT_THROW(parse_structured_review("THOUGHT: fine.\nREVIEW JSON: {}"), ParseError);
}

TEST(StructuredReviewParse, InvalidJson) {
  EXPECT_THROW(parse_structured_review("```json\n{\"Summary\": \n```"), ParseError);
}

TEST(StructuredReviewParse, EveryFieldIsRequired) {
  const auto base = valid_review_json();
  for (const auto& [key, _] : base.items()) {
    auto j = base;
    j.erase(key);
    EXPECT_THROW(parse_structured_review(fenced(j)), ParseError) << key;
  }
}

TEST(StructuredReviewParse, RatingRanges) {
  const std::tuple<const char*, int, int> ranges[] = {
      {"Originality", 1, 4}, {"Quality", 1, 4},      {"Clarity", 1, 4},
      {"Significance", 1, 4}, {"Soundness", 1, 4},   {"Presentation", 1, 4},
      {"Contribution", 1, 4}, {"Overall", 1, 10},    {"Confidence", 1, 5}};
  for (const auto& [key, lo, hi] : ranges) {
    auto j = valid_review_json();
    j[key] = lo - 1;
    EXPECT_THROW(parse_structured_review(fenced(j)), ParseError) << key;
    j[key] = hi + 1;
    EXPECT_THROW(parse_structured_review(fenced(j)), ParseError) << key;
    j[key] = hi;
    EXPECT_NO_THROW(parse_structured_review(fenced(j))) << key;
    j[key] = "3";
    EXPECT_THROW(parse_structured_review(fenced(j)), ParseError) << key;
  }
}

TEST(StructuredReviewParse, MistypedFields) {
  auto j = valid_review_json();
  j["Strengths"] = "one string";
  EXPECT_THROW(parse_structured_review(fenced(j)), ParseError);
  j = valid_review_json();
  j["Ethical Concerns"] = "no";
  EXPECT_THROW(parse_structured_review(fenced(j)), ParseError);
  j = valid_review_json();
  j["Overall"] = 7.5;
  EXPECT_THROW(parse_structured_review(fenced(j)), ParseError);
}

TEST(StructuredReviewParse, RenderParseRoundTrip) {
  for (int v = 0; v < 40; ++v) {
    const auto review = sample_review(v);
    EXPECT_EQ(parse_structured_review(render_structured_response(review, "thinking")), review);
  }
}

// --- judge verdict parsing ---------------------------------------------------

TEST(JudgeParse, AiVerdict) {
  const auto v = parse_judge_verdict(llm_data("judge_ai.txt"));
  EXPECT_EQ(v.decision, Label::AI);
  EXPECT_EQ(v.rationale, "repetitive phrasing");
}

TEST(JudgeParse, HumanVerdict) {
  const auto v = parse_judge_verdict(llm_data("judge_human.txt"));
  EXPECT_EQ(v.decision, Label::Human);
  EXPECT_EQ(v.rationale, "subjective opinions");
}

TEST(JudgeParse, UnknownResultIsRejected) {
  EXPECT_THROW(parse_judge_verdict("```json\n{\"Result\":\"maybe\",\"Rationale\":\"x\"}\n```"),
               ParseError);
}

TEST(JudgeParse, ResultIsHumanOrAiInAnyCaseIgnoringPadding) {
  const std::vector<std::pair<std::string, std::optional<Label>>> cases{
      {"AI", Label::AI},       {"ai", Label::AI},         {"Ai", Label::AI},
      {"aI", Label::AI},       {"human", Label::Human},   {"HUMAN", Label::Human},
      {"Human", Label::Human}, {"hUmAn", Label::Human},   {"", std::nullopt},
      {" AI", Label::AI},      {"AI ", Label::AI},        {"humans", std::nullopt},
      {"A.I.", std::nullopt},  {"machine", std::nullopt}, {"LLM", std::nullopt}};
  for (const auto& [result, expected] : cases) {
    const std::string raw =
        fenced(nlohmann::ordered_json{{"Result", result}, {"Rationale", "because"}});
    if (expected) {
      EXPECT_EQ(parse_judge_verdict(raw).decision, *expected) << result;
    } else {
      EXPECT_THROW(parse_judge_verdict(raw), ParseError) << result;
    }
  }
}

TEST(JudgeParse, RequiresRationaleAndJson) {
  EXPECT_THROW(parse_judge_verdict("The review was written by a human."), ParseError);
  EXPECT_THROW(parse_judge_verdict("```json\n{\"Result\":\"AI\"}\n```"), ParseError);
  EXPECT_THROW(parse_judge_verdict("```json\n{\"Result\":\"AI\",\"Rationale\":\"\"}\n```"),
               ParseError);
}

TEST(JudgeParse, BareFenceAndWholeObjectAccepted) {
  EXPECT_EQ(parse_judge_verdict("```\n{\"Result\":\"AI\",\"Rationale\":\"r\"}\n```").decision,
            Label::AI);
  EXPECT_EQ(parse_judge_verdict("{\"Result\":\"human\",\"Rationale\":\"r\"}").decision,
            Label::Human);
}

TEST(JudgeParse, RenderRoundTrip) {
  const JudgeVerdict v{Label::AI, "Uses \"stock\" phrases:\n1. notably\n2. furthermore"};
  EXPECT_EQ(parse_judge_verdict(render_judge_response(v)), v);
}

// --- chat client -------------------------------------------------------------

TEST(Chat, MockRoundTrip) {
  ScriptedChatModel model([](const ChatRequest&, int) { return std::string("hello"); });
  EXPECT_EQ(model.complete(simple_request()), "hello");
}

TEST(Chat, RequestValidation) {
  auto r = simple_request();
  r.system_prompt.clear();
  EXPECT_THROW(r.validate(), InvalidArgument);
  r = simple_request();
  r.temperature = -0.1;
  EXPECT_THROW(r.validate(), InvalidArgument);
  r = simple_request();
  r.max_output_tokens = 0;
  EXPECT_THROW(r.validate(), InvalidArgument);
}

TEST(Chat, TransientFailuresAreRetried) {
  auto transport = std::make_shared<ScriptedTransport>();
  transport->script = {[] { return HttpResponse{503, "busy"}; },
                       [] { return HttpResponse{429, "slow down"}; },
                       [] { return HttpResponse{200, completion_body("hello")}; }};
  std::vector<std::chrono::milliseconds> sleeps;
  HttpChatModel model(endpoint_with_retries(3), transport,
                      [&](std::chrono::milliseconds d) { sleeps.push_back(d); });
  EXPECT_EQ(model.complete(simple_request()), "hello");
  EXPECT_EQ(transport->requests.size(), 3u);
  EXPECT_EQ(sleeps, (std::vector<std::chrono::milliseconds>{std::chrono::milliseconds(500),
                                                            std::chrono::milliseconds(1000)}));
  EXPECT_EQ(transport->requests.front().first, "/chat/completions");
}

TEST(Chat, NetworkErrorsRetriedUntilBudgetSpent) {
  auto transport = std::make_shared<ScriptedTransport>();
  transport->script = {[]() -> HttpResponse {
    throw ProviderError(ProviderErrorKind::Network, "timed out");
  }};
  HttpChatModel model(endpoint_with_retries(3), transport, [](auto) {});
  try {
    model.complete(simple_request());
    FAIL();
  } catch (const ProviderError& e) {
    EXPECT_EQ(e.kind(), ProviderErrorKind::Network);
  }
  EXPECT_EQ(transport->requests.size(), 3u);
}

TEST(Chat, AuthErrorIsNeverRetried) {
  auto transport = std::make_shared<ScriptedTransport>();
  transport->script = {[] { return HttpResponse{401, "bad key"}; }};
  HttpChatModel model(endpoint_with_retries(3), transport, [](auto) {});
  try {
    model.complete(simple_request());
    FAIL();
  } catch (const ProviderError& e) {
    EXPECT_EQ(e.kind(), ProviderErrorKind::Auth);
    EXPECT_EQ(e.http_status(), 401);
  }
  EXPECT_EQ(transport->requests.size(), 1u);
}

TEST(Chat, RefusalIsReportedAndNotRetried) {
  auto transport = std::make_shared<ScriptedTransport>();
  transport->script = {[] { return HttpResponse{200, completion_body("", "content_filter")}; }};
  HttpChatModel model(endpoint_with_retries(3), transport, [](auto) {});
  try {
    model.complete(simple_request());
    FAIL();
  } catch (const ProviderError& e) {
    EXPECT_EQ(e.kind(), ProviderErrorKind::Refusal);
  }
  EXPECT_EQ(transport->requests.size(), 1u);
}

TEST(Chat, EncodeRequestCarriesAllFields) {
  auto r = simple_request();
  r.temperature = 1.0;
  r.seed = 9;
  const auto j = nlohmann::json::parse(HttpChatModel::encode_request(r));
  EXPECT_EQ(j["model"], "m");
  EXPECT_EQ(j["messages"][0]["role"], "system");
  EXPECT_EQ(j["messages"][0]["content"], "sys");
  EXPECT_EQ(j["messages"][1]["role"], "user");
  EXPECT_EQ(j["temperature"], 1.0);
  EXPECT_EQ(j["seed"], 9);
}

TEST(Chat, DecodeRejectsMalformedBodies) {
  EXPECT_THROW(HttpChatModel::decode_response("not json"), ProviderError);
  EXPECT_THROW(HttpChatModel::decode_response("{\"choices\":[]}"), ProviderError);
  EXPECT_EQ(HttpChatModel::decode_response(completion_body("text")), "text");
}

TEST(Retry, BackoffIsExponentialAndCapped) {
  RetryPolicy p;
  EXPECT_EQ(p.delay_after(1).count(), 500);
  EXPECT_EQ(p.delay_after(2).count(), 1000);
  EXPECT_EQ(p.delay_after(5).count(), 8000);
  EXPECT_EQ(p.delay_after(10).count(), 8000);
}

TEST(Retry, StatusClassification) {
  EXPECT_EQ(classify_http_status(401), ProviderErrorKind::Auth);
  EXPECT_EQ(classify_http_status(403), ProviderErrorKind::Auth);
  EXPECT_EQ(classify_http_status(429), ProviderErrorKind::RateLimited);
  EXPECT_EQ(classify_http_status(500), ProviderErrorKind::Server);
  EXPECT_EQ(classify_http_status(404), ProviderErrorKind::Http);
}

TEST(Credentials, ResolvedFromNamedEnvironmentVariable) {
  EndpointConfig e;
  EXPECT_EQ(resolve_credential(e), "");
  e.credential_env = "REVDETECT_TEST_UNSET_VARIABLE";
  ::unsetenv("REVDETECT_TEST_UNSET_VARIABLE");
  EXPECT_THROW(resolve_credential(e), ProviderError);
  ::setenv("REVDETECT_TEST_UNSET_VARIABLE", "secret", 1);
  EXPECT_EQ(resolve_credential(e), "secret");
  ::unsetenv("REVDETECT_TEST_UNSET_VARIABLE");
}

// --- batch generation --------------------------------------------------------

namespace {

corpus::Corpus two_paper_corpus() {
  const auto full = corpus::ingest_corpus(revdetect::testing::data_dir() / "fixture_corpus.jsonl");
  std::vector<corpus::Paper> papers{*full.find_paper("p1"), *full.find_paper("p2")};
  return corpus::Corpus(papers, {});
}

std::string review_for(const ChatRequest& request) {
  StructuredReview r = sample_review(static_cast<int>(request.user_prompt.size() % 7));
  return render_structured_response(r, "t");
}

}  // namespace

TEST(Generate, TwoPapersFourArchetypes) {
  const auto c = two_paper_corpus();
  ScriptedChatModel model([](const ChatRequest& r, int) { return review_for(r); }, "gpt-4o");
  const std::vector<std::string> ids{"p2", "p1"};
  const auto result = generate_reviews(c, ids, corpus::kAllArchetypes, model);
  ASSERT_EQ(result.reviews.size(), 8u);
  EXPECT_TRUE(result.failures.empty());
  for (const auto& review : result.reviews) {
    EXPECT_EQ(review.sections.size(), 5u);
    const auto& source = std::get<corpus::AiSource>(review.source);
    EXPECT_EQ(source.generator, "gpt-4o");
    ASSERT_TRUE(source.archetype.has_value());
  }
  EXPECT_EQ(result.reviews.front().paper_id, "p1");
  EXPECT_EQ(std::get<corpus::AiSource>(result.reviews.front().source).archetype,
            corpus::Archetype::Balanced);
  EXPECT_EQ(result.reviews.back().paper_id, "p2");
  EXPECT_EQ(model.calls(), 8);
}

TEST(Generate, InvalidJsonForOneItemIsRecorded) {
  const auto c = two_paper_corpus();
  ScriptedChatModel model(
      [](const ChatRequest& r, int) -> std::string {
        const bool bad = r.system_prompt.find("You are a perfectionist") != std::string::npos &&
                         r.user_prompt.find("Sparse Attention") != std::string::npos;
        return bad ? "THOUGHT: x\n```json\n{broken\n```" : review_for(r);
      },
      "gpt-4o");
  const std::vector<std::string> ids{"p1", "p2"};
  GenerationOptions options;
  options.max_in_flight = 3;
  const auto result = generate_reviews(c, ids, corpus::kAllArchetypes, model, options);
  EXPECT_EQ(result.reviews.size(), 7u);
  ASSERT_EQ(result.failures.size(), 1u);
  EXPECT_EQ(result.failures[0].paper_id, "p1");
  EXPECT_EQ(result.failures[0].archetype, corpus::Archetype::Nitpicky);
  EXPECT_FALSE(result.failures[0].provider_error.has_value());
}

TEST(Generate, ProviderFailureKindIsRecorded) {
  const auto c = two_paper_corpus();
  ScriptedChatModel model([](const ChatRequest&, int) -> std::string {
    throw ProviderError(ProviderErrorKind::Auth, "denied", 401);
  });
  const std::vector<std::string> ids{"p1"};
  const std::vector<corpus::Archetype> one{corpus::Archetype::Balanced};
  const auto result = generate_reviews(c, ids, one, model);
  ASSERT_EQ(result.failures.size(), 1u);
  EXPECT_EQ(result.failures[0].provider_error, ProviderErrorKind::Auth);
}

TEST(Generate, EmptyArchetypeListAndUnknownPaper) {
  const auto c = two_paper_corpus();
  ScriptedChatModel model([](const ChatRequest& r, int) { return review_for(r); });
  const std::vector<std::string> ids{"p1"};
  EXPECT_THROW(generate_reviews(c, ids, {}, model), InvalidArgument);
  const std::vector<std::string> unknown{"nope"};
  EXPECT_THROW(generate_reviews(c, unknown, corpus::kAllArchetypes, model), InvalidArgument);
}

TEST(Generate, DeterministicUnderConcurrency) {
  const auto c = two_paper_corpus();
  const std::vector<std::string> ids{"p1", "p2"};
  std::vector<corpus::Review> first;
  for (int threads : {1, 4}) {
    ScriptedChatModel model([](const ChatRequest& r, int) { return review_for(r); }, "gpt-4o");
    GenerationOptions options;
    options.max_in_flight = threads;
    const auto result = generate_reviews(c, ids, corpus::kAllArchetypes, model, options);
    if (first.empty()) {
      first = result.reviews;
    } else {
      EXPECT_EQ(result.reviews, first);
    }
  }
}

TEST(Generate, ReviewIdsAreStable) {
  EXPECT_EQ(generated_review_id("p1", "gpt-4o", corpus::Archetype::Nitpicky), "p1:gpt-4o:nitpicky");
}
