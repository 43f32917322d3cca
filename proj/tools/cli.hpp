#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace stylo::cli {

// Every option of every verb. The subset a verb reads is persisted in its
// report.json ("config"), and `stylo rerun` rebuilds an Options from it.
struct Options {
  std::string command;

  // Inputs and outputs
  std::string corpus;
  std::string corpus_b;
  std::string out_dir = "stylo-out";
  std::string out;
  std::string manifest;
  std::string model_file;

  // Common experiment settings
  std::vector<std::string> features;
  std::uint64_t seed = 0;
  double c = 1.0;
  std::string gamma = "scale";
  double split = 0.8;
  double tolerance = 0.001;
  std::string format = "csv";
  unsigned threads = 0;
  bool no_stratify = false;
  bool minmax = false;
  bool class_weighted = false;

  // Verb-specific
  std::string model_filter;
  std::string dataset_filter;
  std::size_t top_k = 8;
  std::size_t bottom_k = 8;
  std::size_t max_features = 0;
  double holdout = 0.25;
  double lowered_c = 0.8;
  bool cross_on_test_split = false;
  bool pooled = false;
  std::size_t grid_size = 512;

  // collect
  std::string questions;
  std::string endpoint;
  std::string prompt_template = "Q: {question}\nA:";
  int max_tokens = 50;
  std::size_t concurrency = 4;
  int max_attempts = 3;
  int timeout_seconds = 30;
  std::string prompt_field = "prompt";
  std::string max_tokens_field = "max_tokens";
  std::string reply_pointer = "/text";
  std::string api_key_env = "STYLO_API_KEY";
  std::string dataset_name;
  std::string model_name;

  // synth
  std::vector<std::string> groups = {"ada", "babbage", "curie", "davinci"};
  std::size_t responses_per_group = 800;
  bool inverted = false;
  double numeral_shift = 2.0;
  double reuse_shift = 1.0;
  double noise_fraction = 0.5;
  double positive_rate = 0.5;

  // train-tagger
  std::string tagged;
  int epochs = 5;
  double tagger_holdout = 0.1;
};

// Runs one invocation; returns the process exit status
// (0 ok, 1 validation, 2 runtime/IO, 3 degenerate data).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Executes an already-parsed command.
int execute(const Options& options, std::ostream& out);

std::string options_to_json(const Options& options);
Options options_from_json(const std::string& text);

}  // namespace stylo::cli
