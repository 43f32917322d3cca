#include "stylo/collector.hpp"

#include <chrono>
#include <cstdlib>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "stylo/error.hpp"
#include "stylo/util.hpp"

namespace stylo {
namespace {

using nlohmann::json;

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

Endpoint parse_endpoint(const std::string& url) {
  const auto scheme = url.find("://");
  if (scheme == std::string::npos || (url.compare(0, scheme, "http") != 0 && url.compare(0, scheme, "https") != 0)) {
    throw ValidationError("endpoint URL must start with http:// or https://");
  }
  const auto slash = url.find('/', scheme + 3);
  if (slash == std::string::npos) return {url, "/"};
  return {url.substr(0, slash), url.substr(slash)};
}

std::string request_once(const Endpoint& endpoint, const std::string& body, const CollectorConfig& config,
                         const std::string& token) {
  httplib::Client client(endpoint.origin);
  client.set_connection_timeout(config.timeout_seconds, 0);
  client.set_read_timeout(config.timeout_seconds, 0);
  client.set_write_timeout(config.timeout_seconds, 0);
  httplib::Headers headers;
  if (!token.empty()) headers.emplace("Authorization", "Bearer " + token);
  const auto res = client.Post(endpoint.path, headers, body, "application/json");
  if (!res) throw IoError("request failed: " + httplib::to_string(res.error()));
  if (res->status < 200 || res->status >= 300) throw IoError("endpoint returned HTTP " + std::to_string(res->status));
  return res->body;
}

std::string extract_completion(const std::string& reply, const std::string& pointer) {
  json j;
  try {
    j = json::parse(reply);
  } catch (const json::parse_error&) {
    throw ValidationError("malformed endpoint reply: not JSON");
  }
  try {
    const json& text = j.at(json::json_pointer(pointer));
    if (!text.is_string()) throw ValidationError("malformed endpoint reply: completion is not a string");
    return text.get<std::string>();
  } catch (const json::exception&) {
    throw ValidationError("malformed endpoint reply: no value at " + pointer);
  }
}

}  // namespace

void validate_template(std::string_view prompt_template) {
  const auto first = prompt_template.find(kQuestionPlaceholder);
  if (first == std::string_view::npos ||
      prompt_template.find(kQuestionPlaceholder, first + 1) != std::string_view::npos) {
    throw ValidationError("prompt template must contain {question} exactly once");
  }
}

std::string render_prompt(std::string_view prompt_template, std::string_view question) {
  validate_template(prompt_template);
  const auto at = prompt_template.find(kQuestionPlaceholder);
  std::string out(prompt_template.substr(0, at));
  out += question;
  out += prompt_template.substr(at + kQuestionPlaceholder.size());
  return out;
}

std::vector<CollectedResponse> collect_responses(std::span<const Question> questions,
                                                 const CollectorConfig& config) {
  if (questions.empty()) throw ValidationError("empty question list");
  validate_template(config.prompt_template);
  if (config.max_tokens < 1) throw ValidationError("max_tokens must be positive");
  if (config.max_attempts < 1) throw ValidationError("max_attempts must be positive");
  if (config.max_concurrent_requests < 1) throw ValidationError("max_concurrent_requests must be positive");
  try {
    (void)json::json_pointer(config.reply_pointer);
  } catch (const json::exception&) {
    throw ValidationError("reply field path must be a JSON pointer such as /choices/0/text");
  }
  const Endpoint endpoint = parse_endpoint(config.endpoint_url);
  std::string token;
  if (!config.api_key_env.empty()) {
    if (const char* value = std::getenv(config.api_key_env.c_str())) token = value;
  }

  std::vector<CollectedResponse> out(questions.size());
  const auto threads = static_cast<unsigned>(std::min(config.max_concurrent_requests, questions.size()));
  parallel_for(questions.size(), threads, [&](std::size_t i) {
    CollectedResponse& r = out[i];
    r.id = questions[i].id;
    r.dataset = config.dataset;
    r.model = config.model;
    r.question = questions[i].text;
    const json body = {{config.prompt_field, render_prompt(config.prompt_template, questions[i].text)},
                       {config.max_tokens_field, config.max_tokens}};
    const std::string payload = body.dump();
    for (int attempt = 1; attempt <= config.max_attempts; ++attempt) {
      r.attempts = attempt;
      try {
        r.response = extract_completion(request_once(endpoint, payload, config, token), config.reply_pointer);
        r.error.reset();
        return;
      } catch (const ValidationError& e) {
        // A reply that arrived but cannot be read is not retried.
        r.error = e.what();
        return;
      } catch (const IoError& e) {
        r.error = e.what();
      }
      if (attempt < config.max_attempts) {
        std::this_thread::sleep_for(std::chrono::milliseconds(config.backoff_base_ms) * (1 << (attempt - 1)));
      }
    }
  });
  return out;
}

std::string collected_to_jsonl(std::span<const CollectedResponse> responses) {
  std::string out;
  for (const auto& r : responses) {
    json j = {{"id", r.id}, {"dataset", r.dataset}, {"model", r.model}, {"question", r.question}};
    if (r.response) j["response"] = *r.response;
    if (r.error) j["error"] = *r.error;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<Question> parse_questions(std::string_view text) {
  std::vector<Question> out;
  const auto lines = split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    if (lines[n].find_first_not_of(" \t") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(lines[n]);
    } catch (const json::parse_error&) {
      throw ParseError("malformed JSON in question file", n + 1);
    }
    if (!j.is_object() || !j.contains("id") || !j.contains("question") || !j.at("id").is_string() ||
        !j.at("question").is_string()) {
      throw ParseError("question lines need string fields 'id' and 'question'", n + 1);
    }
    out.push_back({j.at("id").get<std::string>(), j.at("question").get<std::string>()});
  }
  return out;
}

}  // namespace stylo
