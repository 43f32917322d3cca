#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stylo {

struct CollectorConfig {
  std::string endpoint_url;
  std::string prompt_template = "Q: {question}\nA:";
  int max_tokens = 50;
  std::size_t max_concurrent_requests = 4;
  int max_attempts = 3;
  // Delay before retry k (1-based) is backoff_base_ms * 2^(k-1).
  int backoff_base_ms = 250;
  int timeout_seconds = 30;
  // Request body field names and the JSON pointer to the completion text.
  std::string prompt_field = "prompt";
  std::string max_tokens_field = "max_tokens";
  std::string reply_pointer = "/text";
  // Name of the environment variable holding the bearer token (optional).
  std::string api_key_env = "STYLO_API_KEY";
  // Copied into every output record.
  std::string dataset;
  std::string model;
};

struct Question {
  std::string id;
  std::string text;
};

// Output of the collector: the "unjudged" corpus variant. Exactly one of
// response / error is set.
struct CollectedResponse {
  std::string id;
  std::string dataset;
  std::string model;
  std::string question;
  std::optional<std::string> response;
  std::optional<std::string> error;
  int attempts = 0;
};

inline constexpr std::string_view kQuestionPlaceholder = "{question}";

// Throws ValidationError unless the placeholder occurs exactly once.
void validate_template(std::string_view prompt_template);
std::string render_prompt(std::string_view prompt_template, std::string_view question);

// One POST per question with up to max_concurrent_requests in flight.
// Output order follows the input order. Transport failures (after retries)
// and malformed replies become per-record errors. Throws ValidationError for
// an empty question list or a bad configuration.
std::vector<CollectedResponse> collect_responses(std::span<const Question> questions,
                                                 const CollectorConfig& config);

// JSONL with keys id, dataset, model, question and either response or error.
std::string collected_to_jsonl(std::span<const CollectedResponse> responses);

// Reads questions from JSONL lines {"id": ..., "question": ...}.
std::vector<Question> parse_questions(std::string_view text);

}  // namespace stylo
