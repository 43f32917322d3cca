#include <set>
#include <string>

#include "doctest.h"
#include "stylo/annotator.hpp"
#include "stylo/corpus.hpp"
#include "stylo/synthetic.hpp"
#include "stylo/textpipe.hpp"

using namespace stylo;

TEST_CASE("generator shape and determinism") {
  SyntheticConfig config;
  config.responses_per_group = 50;
  config.seed = 3;
  const auto a = generate_synthetic(config);
  CHECK(a.size() == 200);
  CHECK(a == generate_synthetic(config));
  config.seed = 4;
  CHECK(a != generate_synthetic(config));
  CHECK(distinct_models(a) == std::vector<std::string>{"ada", "babbage", "curie", "davinci"});
  for (const auto& r : a) {
    CHECK(r.label == binarize(r.truth_score));
    CHECK(r.dataset == "synthetic");
  }
  // Every group answers the same questions.
  std::set<std::string> questions;
  for (auto i : records_where_model(a, "ada")) questions.insert(a[i].question);
  for (auto i : records_where_model(a, "curie")) CHECK(questions.contains(a[i].question));
  CHECK(parse_corpus(corpus_to_jsonl(a)) == a);
}

TEST_CASE("vocabulary tags exactly and has uniform shape") {
  const auto& v = synthetic_vocabulary();
  const auto check_pool = [](const std::vector<std::string>& words, Upos expected) {
    for (const auto& w : words) {
      CAPTURE(w);
      CHECK(w.size() == 4);
      CHECK(count_syllables(w) == 1);
      CHECK(annotate("This " + w + " .").tokens[1].pos == expected);
    }
  };
  check_pool(v.nouns, Upos::NOUN);
  check_pool(v.adjectives, Upos::ADJ);
}

TEST_CASE("responses have three ten-token sentences") {
  SyntheticConfig config;
  config.responses_per_group = 20;
  for (const auto& r : generate_synthetic(config)) {
    const auto doc = annotate(r.response);
    REQUIRE(doc.sentences.size() == 3);
    for (const auto& s : doc.sentences) CHECK(s.size() == 11);
  }
}

TEST_CASE("label-0 responses carry more numerals") {
  SyntheticConfig config;
  config.groups = {"ada"};
  config.group_adjective_shift = {0.0};
  config.responses_per_group = 400;
  double num[2] = {0, 0};
  double n[2] = {0, 0};
  for (const auto& r : generate_synthetic(config)) {
    for (const auto& t : annotate(r.response).tokens) num[r.label] += t.pos == Upos::NUM ? 1 : 0;
    n[r.label] += 1;
  }
  CHECK(num[0] / n[0] > num[1] / n[1] + 1.5);
  config.inverted = true;
  num[0] = num[1] = n[0] = n[1] = 0;
  for (const auto& r : generate_synthetic(config)) {
    for (const auto& t : annotate(r.response).tokens) num[r.label] += t.pos == Upos::NUM ? 1 : 0;
    n[r.label] += 1;
  }
  CHECK(num[1] / n[1] > num[0] / n[0] + 1.5);
}

TEST_CASE("generator validates its configuration") {
  SyntheticConfig config;
  config.group_adjective_shift = {0.0};
  CHECK_THROWS(generate_synthetic(config));
  config = SyntheticConfig{};
  config.positive_rate = 1.5;
  CHECK_THROWS(generate_synthetic(config));
}
