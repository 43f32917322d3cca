#include <atomic>
#include <chrono>
#include <cstdlib>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "doctest.h"
#include "httplib.h"
#include "json.hpp"
#include "stylo/collector.hpp"
#include "stylo/error.hpp"

using namespace stylo;
using nlohmann::json;

namespace {

// Local completion endpoint recording what it receives.
class FakeEndpoint {
 public:
  FakeEndpoint() {
    server_.Post("/ok", [this](const httplib::Request& req, httplib::Response& res) {
      record(req);
      const auto body = json::parse(req.body);
      // Later questions answer sooner, so completion order differs from input order.
      const auto prompt = body.at("prompt").get<std::string>();
      std::this_thread::sleep_for(std::chrono::milliseconds(prompt.size() % 2 ? 1 : 30));
      res.set_content(json{{"text", "A for " + prompt}}.dump(), "application/json");
    });
    server_.Post("/nested", [this](const httplib::Request& req, httplib::Response& res) {
      record(req);
      res.set_content(R"({"choices":[{"text":"nested"}]})", "application/json");
    });
    server_.Post("/fail", [this](const httplib::Request& req, httplib::Response& res) {
      record(req);
      res.status = 503;
    });
    server_.Post("/malformed", [this](const httplib::Request& req, httplib::Response& res) {
      record(req);
      res.set_content("<html>oops</html>", "text/html");
    });
    server_.Post("/flaky", [this](const httplib::Request& req, httplib::Response& res) {
      const bool first = record(req) == 1;
      if (first) {
        res.status = 500;
        return;
      }
      res.set_content(R"({"text":"second time"})", "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeEndpoint() {
    server_.stop();
    thread_.join();
  }

  std::string url(const std::string& path) const { return "http://127.0.0.1:" + std::to_string(port_) + path; }
  std::vector<std::string> bodies() {
    std::lock_guard lock(mutex_);
    return bodies_;
  }
  std::vector<std::string> auth() {
    std::lock_guard lock(mutex_);
    return auth_;
  }
  int hits() const { return hits_; }

 private:
  // Returns the number of requests seen so far with this body.
  int record(const httplib::Request& req) {
    ++hits_;
    std::lock_guard lock(mutex_);
    bodies_.push_back(req.body);
    auth_.push_back(req.get_header_value("Authorization"));
    return ++per_body_[req.body];
  }

  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
  std::mutex mutex_;
  std::vector<std::string> bodies_;
  std::vector<std::string> auth_;
  std::map<std::string, int> per_body_;
  std::atomic<int> hits_{0};
};

CollectorConfig config_for(const std::string& url) {
  CollectorConfig c;
  c.endpoint_url = url;
  c.backoff_base_ms = 1;
  c.timeout_seconds = 5;
  c.api_key_env = "STYLO_TEST_COLLECTOR_KEY";
  c.dataset = "truthfulqa";
  c.model = "davinci";
  return c;
}

}  // namespace

TEST_CASE("prompt templates") {
  CHECK(render_prompt("Q: {question}\nA:", "What happens if you smash a mirror?") ==
        "Q: What happens if you smash a mirror?\nA:");
  CHECK_THROWS_AS(validate_template("no placeholder"), ValidationError);
  CHECK_THROWS_AS(validate_template("{question} {question}"), ValidationError);
}

TEST_CASE("request body, output order and record fields") {
  FakeEndpoint endpoint;
  std::vector<Question> questions;
  for (int i = 0; i < 12; ++i) questions.push_back({"q" + std::to_string(i), std::string(static_cast<std::size_t>(i + 1), 'x') + "?"});
  questions[0].text = "What happens if you smash a mirror?";
  auto config = config_for(endpoint.url("/ok"));
  config.max_concurrent_requests = 4;
  const auto out = collect_responses(questions, config);
  REQUIRE(out.size() == questions.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    CHECK(out[i].id == questions[i].id);
    CHECK(out[i].question == questions[i].text);
    CHECK(out[i].dataset == "truthfulqa");
    CHECK(out[i].model == "davinci");
    REQUIRE(out[i].response.has_value());
    CHECK(*out[i].response == "A for Q: " + questions[i].text + "\nA:");
    CHECK_FALSE(out[i].error.has_value());
    CHECK(out[i].attempts == 1);
  }
  bool found = false;
  for (const auto& body : endpoint.bodies()) {
    const auto j = json::parse(body);
    CHECK(j.size() == 2);
    CHECK(j.at("max_tokens") == 50);
    found |= j.at("prompt") == "Q: What happens if you smash a mirror?\nA:";
  }
  CHECK(found);

  const auto jsonl = collected_to_jsonl(out);
  const auto first = json::parse(jsonl.substr(0, jsonl.find('\n')));
  CHECK(first.at("id") == "q0");
  CHECK_FALSE(first.contains("truth_score"));
  CHECK_FALSE(first.contains("error"));
}

TEST_CASE("configurable field names and reply pointer") {
  FakeEndpoint endpoint;
  auto config = config_for(endpoint.url("/nested"));
  config.prompt_field = "input";
  config.max_tokens_field = "max_new_tokens";
  config.max_tokens = 7;
  config.reply_pointer = "/choices/0/text";
  const std::vector<Question> q = {{"a", "Why?"}};
  const auto out = collect_responses(q, config);
  CHECK(out[0].response == "nested");
  const auto body = json::parse(endpoint.bodies().at(0));
  CHECK(body.at("input") == "Q: Why?\nA:");
  CHECK(body.at("max_new_tokens") == 7);
}

TEST_CASE("transport failures are retried then recorded") {
  FakeEndpoint endpoint;
  auto config = config_for(endpoint.url("/fail"));
  config.max_attempts = 3;
  const std::vector<Question> q = {{"a", "One?"}, {"b", "Two?"}};
  const auto out = collect_responses(q, config);
  for (const auto& r : out) {
    CHECK_FALSE(r.response.has_value());
    REQUIRE(r.error.has_value());
    CHECK(r.error->find("503") != std::string::npos);
    CHECK(r.attempts == 3);
  }
  CHECK(endpoint.hits() == 6);
  CHECK(collected_to_jsonl(out).find("\"error\"") != std::string::npos);
}

TEST_CASE("a retry can succeed") {
  FakeEndpoint endpoint;
  const std::vector<Question> q = {{"a", "Again?"}};
  const auto out = collect_responses(q, config_for(endpoint.url("/flaky")));
  CHECK(out[0].response == "second time");
  CHECK(out[0].attempts == 2);
  CHECK_FALSE(out[0].error.has_value());
}

TEST_CASE("malformed replies become per-record errors without retries") {
  FakeEndpoint endpoint;
  const std::vector<Question> q = {{"a", "Huh?"}};
  const auto out = collect_responses(q, config_for(endpoint.url("/malformed")));
  REQUIRE(out[0].error.has_value());
  CHECK(out[0].error->find("malformed") != std::string::npos);
  CHECK(endpoint.hits() == 1);

  auto config = config_for(endpoint.url("/ok"));
  config.reply_pointer = "/missing";
  const auto missing = collect_responses(q, config);
  CHECK(missing[0].error.has_value());
}

TEST_CASE("an unreachable endpoint fails every record") {
  auto config = config_for("http://127.0.0.1:1/never");
  config.max_attempts = 2;
  config.timeout_seconds = 1;
  const std::vector<Question> q = {{"a", "Anyone?"}};
  const auto out = collect_responses(q, config);
  CHECK(out[0].error.has_value());
  CHECK(out[0].attempts == 2);
}

TEST_CASE("the API key is read from the named environment variable only") {
  FakeEndpoint endpoint;
  const std::vector<Question> q = {{"a", "Key?"}};
  ::unsetenv("STYLO_TEST_COLLECTOR_KEY");
  collect_responses(q, config_for(endpoint.url("/ok")));
  ::setenv("STYLO_TEST_COLLECTOR_KEY", "sekret", 1);
  collect_responses(q, config_for(endpoint.url("/ok")));
  ::unsetenv("STYLO_TEST_COLLECTOR_KEY");
  const auto auth = endpoint.auth();
  REQUIRE(auth.size() == 2);
  CHECK(auth[0].empty());
  CHECK(auth[1] == "Bearer sekret");
}

TEST_CASE("configuration errors") {
  const std::vector<Question> none;
  CHECK_THROWS_WITH_AS(collect_responses(none, config_for("http://127.0.0.1:1/")), "empty question list",
                       ValidationError);
  const std::vector<Question> q = {{"a", "?"}};
  auto bad = config_for("ftp://example.com");
  CHECK_THROWS_AS(collect_responses(q, bad), ValidationError);
  bad = config_for("http://127.0.0.1:1/");
  bad.prompt_template = "no placeholder";
  CHECK_THROWS_AS(collect_responses(q, bad), ValidationError);
  bad = config_for("http://127.0.0.1:1/");
  bad.reply_pointer = "text";
  CHECK_THROWS_AS(collect_responses(q, bad), ValidationError);
}

TEST_CASE("question files") {
  const auto q = parse_questions("{\"id\":\"1\",\"question\":\"Why?\"}\n\n{\"id\":\"2\",\"question\":\"How?\"}\n");
  REQUIRE(q.size() == 2);
  CHECK(q[1].text == "How?");
  try {
    parse_questions("{\"id\":\"1\",\"question\":\"Why?\"}\n{\"id\":2}\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}
