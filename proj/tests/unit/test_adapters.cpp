#include <gtest/gtest.h>

#include <httplib.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <thread>

#include "ttc/adapters/chat_client.hpp"
#include "ttc/adapters/scripted_solver.hpp"
#include "ttc/adapters/solver_factory.hpp"
#include "ttc/core/errors.hpp"

namespace fs = std::filesystem;
using namespace ttc;

namespace {

Task text_task(const std::string& id) { return Task{id, "", "prompt for " + id, AnswerKind::text, std::nullopt, nullptr}; }

Script coin_script() {
  return script_from_json(nlohmann::json::parse(R"({
    "latency_ms": 12,
    "tasks": {
      "t1": {"heads": 0.3, "tails": 0.7},
      "t2": {"answer": {"yes": 1.0}, "prefix": {"@echo": 1.0}},
      "*": {"answer": {"fallback": 1.0}, "judge": {"@rot13": 1.0}}
    },
    "rules": [{"role": "answer", "contains": "magic", "answers": {"rule hit": 1.0}}]
  })"));
}

std::string completion_body(const std::string& text) {
  return nlohmann::json{{"choices", {{{"message", {{"role", "assistant"}, {"content", text}}}}}}}.dump();
}

// Local OpenAI-compatible endpoint replaying a list of HTTP statuses.
class FakeEndpoint {
 public:
  explicit FakeEndpoint(std::vector<int> statuses) : statuses_(std::move(statuses)) {
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
      const auto n = hits_++;
      last_auth_ = req.get_header_value("Authorization");
      last_body_ = req.body;
      const int status = n < statuses_.size() ? statuses_[n] : 200;
      res.status = status;
      if (status == 200) res.set_content(completion_body("reply " + std::to_string(n)), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeEndpoint() {
    server_.stop();
    thread_.join();
  }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }
  std::size_t hits() const { return hits_; }
  std::string last_auth() const { return last_auth_; }
  std::string last_body() const { return last_body_; }

 private:
  httplib::Server server_;
  std::vector<int> statuses_;
  std::atomic<std::size_t> hits_{0};
  std::string last_auth_, last_body_;
  int port_ = 0;
  std::thread thread_;
};

ChatClientConfig client_config(const std::string& url) {
  ChatClientConfig c;
  c.base_url = url;
  c.model = "test-model";
  c.max_retries = 3;
  c.initial_backoff = std::chrono::milliseconds(1);
  c.timeout = std::chrono::milliseconds(5000);
  return c;
}

}  // namespace

TEST(ScriptedSolver, DrawsDependOnlyOnSeedTaskAndRole) {
  ScriptedSolver s("coin", coin_script(), 99);
  const auto t1 = text_task("t1");
  Query a{&t1, "answer", "one prompt"};
  Query b{&t1, "answer", "another prompt"};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    EXPECT_EQ(s.complete(a, seed).text, s.complete(b, seed).text);
    EXPECT_EQ(s.complete(a, seed).text, ScriptedSolver("coin", coin_script(), 99).complete(a, seed).text);
  }
  EXPECT_EQ(s.complete(a, 0).elapsed_ms, 12u);
}

TEST(ScriptedSolver, FrequenciesFollowTable) {
  ScriptedSolver s("coin", coin_script(), 1);
  const auto t1 = text_task("t1");
  int heads = 0;
  constexpr int kTrials = 20000;
  for (int i = 0; i < kTrials; ++i) heads += s.complete({&t1, "answer", ""}, static_cast<std::uint64_t>(i)).text == "heads";
  EXPECT_NEAR(heads / double(kTrials), 0.3, 0.015);
}

TEST(ScriptedSolver, RolesRulesAndSpecialTexts) {
  ScriptedSolver s("coin", coin_script());
  const auto t2 = text_task("t2");
  const auto t9 = text_task("t9");
  EXPECT_EQ(s.complete({&t2, "answer", "x"}, 0).text, "yes");
  EXPECT_EQ(s.complete({&t2, "prefix", "echo me"}, 0).text, "echo me");
  EXPECT_EQ(s.complete({&t9, "answer", "x"}, 0).text, "fallback");
  EXPECT_EQ(s.complete({&t9, "judge", "Hello"}, 0).text, "Uryyb");
  EXPECT_EQ(s.complete({&t2, "answer", "a magic word"}, 0).text, "rule hit");
  const auto missing = s.complete({&t2, "plan", "x"}, 0);
  ASSERT_TRUE(missing.error);
  EXPECT_NE(missing.error->find("role 'plan'"), std::string::npos);
  EXPECT_EQ(rot13(rot13("Round Trip 42")), "Round Trip 42");
}

TEST(ScriptedSolver, ValidationRejectsBadTables) {
  EXPECT_THROW(script_from_json(nlohmann::json::parse(R"({"tasks": {"t": {"a": 0.5}}})")), ConfigError);
  EXPECT_THROW(script_from_json(nlohmann::json::parse(R"({"tasks": {"t": {"a": 1.5, "b": -0.5}}})")), ConfigError);
  EXPECT_THROW(script_from_json(nlohmann::json::parse(R"({"tasks": {"t": {}}})")), ConfigError);
  EXPECT_THROW(script_from_json(nlohmann::json::parse(R"({"tasks": {"t": {"a": "x"}}})")), ConfigError);
  EXPECT_NO_THROW(script_from_json(nlohmann::json::parse(R"({"tasks": {"t": {"a": 0.25, "b": 0.75}}})")));
}

TEST(SolverFactory, BuildsScriptedAndCompositeSolvers) {
  const std::string script = R"({"tasks": {"*": {"answer": {"7": 1.0}, "judge": {"ok": 1.0}}}})";
  std::vector<SolverBinding> bindings{
      {"a", SolverKind::scripted, {{"script_json", script}, {"seed", "3"}}},
      {"mix", SolverKind::composite, {{"default", "a"}}},
  };
  const auto reg = make_solvers(bindings);
  ASSERT_EQ(reg.size(), 2u);
  const auto t = text_task("q");
  EXPECT_EQ(reg.at("mix")->complete({&t, "judge", ""}, 0).text, "ok");
  EXPECT_EQ(solver_kind_from_string("http-model"), SolverKind::http_model);
  EXPECT_EQ(solver_kind_from_string("http_model"), SolverKind::http_model);
  EXPECT_THROW(solver_kind_from_string("oracle"), ConfigError);
}

TEST(SolverFactory, RejectsInvalidBindings) {
  const std::string script = R"({"tasks": {"*": {"x": 1.0}}})";
  EXPECT_THROW(make_solvers({{"a", SolverKind::scripted, {}}}), ConfigError);
  EXPECT_THROW(make_solvers({{"a", SolverKind::scripted, {{"script_json", script}}},
                             {"a", SolverKind::scripted, {{"script_json", script}}}}),
               ConfigError);
  EXPECT_THROW(make_solvers({{"c", SolverKind::composite, {{"default", "ghost"}}}}), ConfigError);
  EXPECT_THROW(make_solvers({{"a", SolverKind::scripted, {{"script_json", script}, {"seed", "x1"}}}}), ConfigError);
  EXPECT_THROW(make_solvers({{"m", SolverKind::http_model,
                              {{"base_url", "http://127.0.0.1:1"}, {"model", "m"}, {"api_key", "sk-secret"}}}}),
               ConfigError);
}

TEST(SolverFactory, CandidatesFromCompletions) {
  Task t{"q", "", "p", AnswerKind::integer, std::nullopt, nullptr};
  const auto good = make_candidate({"The answer is 12.", 5, std::nullopt}, t, "s", "m", 3);
  ASSERT_TRUE(good.ok());
  EXPECT_EQ(good.answer->as_integer(), 12);
  EXPECT_EQ(*good.rationale, "The answer is 12.");
  EXPECT_EQ(good.elapsed_ms, 5u);
  const auto bad = make_candidate({"no digits", 0, std::nullopt}, t, "s", "m", 3);
  ASSERT_TRUE(bad.error);
  EXPECT_EQ(bad.error->rfind("malformed output", 0), 0u);
  const auto failed = make_candidate({"", 0, std::string("HTTP 500")}, t, "s", "m", 3);
  EXPECT_FALSE(failed.ok());
}

TEST(ChatClient, MissingKeyIsConfigErrorBeforeNetwork) {
  auto c = client_config("http://127.0.0.1:9");
  c.api_key_env = "TTC_TEST_KEY_THAT_IS_NOT_SET";
  ::unsetenv(c.api_key_env.c_str());
  EXPECT_THROW(ChatClient{c}, ConfigError);
  EXPECT_THROW(make_solvers({{"m", SolverKind::http_model,
                              {{"base_url", "http://127.0.0.1:9"}, {"model", "m"}, {"api_key_env", c.api_key_env}}}}),
               ConfigError);
}

TEST(ChatClient, RetriesTransientFailuresWithKeyHeader) {
  FakeEndpoint server({429, 503});
  auto c = client_config(server.url());
  c.api_key_env = "TTC_TEST_KEY";
  ::setenv("TTC_TEST_KEY", "sk-test", 1);
  ChatClient client(c);
  const auto r = client.complete("hello", 4);
  EXPECT_EQ(r.text, "reply 2");
  EXPECT_EQ(r.retries, 2);
  EXPECT_EQ(r.events, (std::vector<std::string>{"attempt 1: HTTP 429", "attempt 2: HTTP 503", "attempt 3: HTTP 200"}));
  EXPECT_EQ(server.last_auth(), "Bearer sk-test");
  const auto body = nlohmann::json::parse(server.last_body());
  EXPECT_EQ(body.at("model"), "test-model");
  EXPECT_EQ(body.at("seed"), 4);
  ::unsetenv("TTC_TEST_KEY");
}

TEST(ChatClient, GivesUpAfterRetriesAndOnAuth) {
  {
    FakeEndpoint server({500, 500, 500, 500, 500});
    ChatClient client(client_config(server.url()));
    try {
      client.complete("x", 0);
      FAIL();
    } catch (const ChatError& e) {
      EXPECT_EQ(e.kind(), ChatError::Kind::server);
    }
    EXPECT_EQ(server.hits(), 4u);
  }
  {
    FakeEndpoint server({401});
    ChatClient client(client_config(server.url()));
    try {
      client.complete("x", 0);
      FAIL();
    } catch (const ChatError& e) {
      EXPECT_EQ(e.kind(), ChatError::Kind::auth);
      EXPECT_EQ(e.status(), 401);
    }
    EXPECT_EQ(server.hits(), 1u);
  }
}

TEST(ChatClient, CacheAvoidsNetwork) {
  FakeEndpoint server({});
  auto c = client_config(server.url());
  c.cache_dir = fs::temp_directory_path() / ("ttc_chat_cache_" + std::to_string(::getpid()));
  fs::remove_all(c.cache_dir);
  ChatClient client(c);
  const auto first = client.complete("same prompt", 1);
  const auto second = client.complete("same prompt", 1);
  EXPECT_FALSE(first.from_cache);
  EXPECT_TRUE(second.from_cache);
  EXPECT_EQ(first.text, second.text);
  EXPECT_EQ(client.network_calls(), 1u);
  client.complete("same prompt", 2);
  EXPECT_EQ(client.network_calls(), 2u);
  EXPECT_NE(ChatClient::cache_key("m", "p", {}, 1), ChatClient::cache_key("m", "p", {}, 2));
  EXPECT_NE(ChatClient::cache_key("m", "p", {}, 1), ChatClient::cache_key("m", "p", {0.1, 1024}, 1));
  fs::remove_all(c.cache_dir);
}

TEST(ChatClient, SolverFacadeReportsErrors) {
  FakeEndpoint server({400});
  auto solver = ChatSolver("remote", std::make_shared<ChatClient>(client_config(server.url())));
  const auto t = text_task("q");
  const auto c = solver.complete({&t, "answer", "hi"}, 0);
  ASSERT_TRUE(c.error);
  EXPECT_THROW(extract_content("{}"), ChatError);
  EXPECT_EQ(extract_content(completion_body("abc")), "abc");
}
