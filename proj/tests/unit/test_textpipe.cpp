#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "fuzz.hpp"
#include "stylo/annotator.hpp"
#include "stylo/entities.hpp"
#include "stylo/error.hpp"
#include "stylo/lemmatizer.hpp"
#include "stylo/tagger.hpp"
#include "stylo/textpipe.hpp"
#include "stylo/util.hpp"

using namespace stylo;

namespace {

std::vector<std::string> surfaces(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& t : tokenize(text)) out.push_back(t.surface);
  return out;
}

std::vector<Upos> tags_of(std::string_view text) {
  std::vector<Upos> out;
  for (const auto& t : annotate(text).tokens) out.push_back(t.pos);
  return out;
}

std::vector<std::pair<std::string, EntityType>> entities_of(std::string_view text) {
  const auto doc = annotate(text);
  std::vector<std::pair<std::string, EntityType>> out;
  for (const auto& e : doc.entities) {
    std::string phrase;
    for (std::size_t k = e.tokens.begin; k < e.tokens.end; ++k) phrase += (phrase.empty() ? "" : " ") + doc.tokens[k].surface;
    out.emplace_back(phrase, e.type);
  }
  return out;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

}  // namespace

TEST_CASE("tokenize splits punctuation, symbols and contractions") {
  CHECK(tokenize("").empty());
  CHECK(surfaces("I don't know.") == std::vector<std::string>{"I", "do", "n't", "know", "."});
  CHECK(surfaces("It costs $5.") == std::vector<std::string>{"It", "costs", "$", "5", "."});
  CHECK(surfaces("Dr. Smith arrived, e.g. late!") ==
        std::vector<std::string>{"Dr.", "Smith", "arrived", ",", "e.g.", "late", "!"});
  CHECK(surfaces("(yes)") == std::vector<std::string>{"(", "yes", ")"});
  CHECK(surfaces("It's 3.5%") == std::vector<std::string>{"It", "'s", "3.5", "%"});
}

TEST_CASE("token spans point back into the source") {
  const std::string text = "  Hello,  world!  It's  fine. ";
  for (const auto& t : tokenize(text)) CHECK(text.substr(t.span.begin, t.span.end - t.span.begin) == t.surface);
}

TEST_CASE("tokenize property: spans cover every non-whitespace byte exactly once") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    const auto text = stylo::testing::random_document(rng);
    const auto tokens = tokenize(text);
    std::vector<int> covered(text.size(), 0);
    std::size_t previous_end = 0;
    for (const auto& t : tokens) {
      REQUIRE(t.span.begin < t.span.end);
      REQUIRE(t.span.end <= text.size());
      CHECK(t.span.begin >= previous_end);
      previous_end = t.span.end;
      CHECK(text.substr(t.span.begin, t.span.end - t.span.begin) == t.surface);
      for (std::size_t k = t.span.begin; k < t.span.end; ++k) ++covered[k];
    }
    for (std::size_t k = 0; k < text.size(); ++k) CHECK(covered[k] == (is_space(text[k]) ? 0 : 1));
  }
}

TEST_CASE("split_sentences examples") {
  CHECK(split_sentences({}).empty());
  CHECK(split_sentences(tokenize("Yes. No.")).size() == 2);
  CHECK(split_sentences(tokenize("I don't know")).size() == 1);
  CHECK(split_sentences(tokenize("Wait... what?! Fine.")).size() == 3);
  CHECK(split_sentences(tokenize("Mr. Smith met Dr. Jones.")).size() == 1);
  const auto quoted = tokenize("He said \"stop.\" Then left.");
  const auto ranges = split_sentences(quoted);
  REQUIRE(ranges.size() == 2);
  CHECK(quoted[ranges[0].end - 1].surface == "\"");
}

TEST_CASE("split_sentences property: ranges partition the tokens") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    const auto tokens = tokenize(stylo::testing::random_document(rng));
    const auto ranges = split_sentences(tokens);
    std::size_t next = 0;
    for (const auto& r : ranges) {
      CHECK(r.begin == next);
      CHECK(r.end > r.begin);
      next = r.end;
    }
    CHECK(next == tokens.size());
  }
}

TEST_CASE("count_syllables examples") {
  CHECK(count_syllables("cat") == 1);
  CHECK(count_syllables("table") == 2);
  CHECK(count_syllables("5") == 0);
  CHECK(count_syllables("") == 0);
  CHECK(count_syllables(",") == 0);
}

TEST_CASE("count_syllables on a hand-counted word list") {
  // Vowel groups (a e i o u y), silent final e unless consonant + "le".
  const std::vector<std::pair<std::string, int>> words = {
      {"a", 1},        {"the", 1},      {"make", 1},     {"little", 2},  {"bottle", 2},   {"apple", 2},
      {"rhythm", 1},   {"yes", 1},      {"happy", 2},    {"beautiful", 3}, {"queue", 1},  {"idea", 2},
      {"computer", 3}, {"mirror", 2},   {"breaks", 1},   {"visited", 3}, {"quickly", 2},  {"Italians", 3},
      {"Germans", 2},  {"cities", 2},   {"running", 2},  {"doctors", 2}, {"be", 1},       {"free", 1},
      {"simple", 2},   {"syllable", 3}, {"readability", 5}, {"strength", 1}, {"aerial", 2}, {"x", 1}};
  for (const auto& [word, expected] : words) {
    CAPTURE(word);
    CHECK(count_syllables(word) == expected);
  }
}

TEST_CASE("pos tagging examples") {
  CHECK(tags_of("5") == std::vector<Upos>{Upos::NUM});
  CHECK(tags_of(",") == std::vector<Upos>{Upos::PUNCT});
  CHECK(tags_of("The red mirror breaks") == std::vector<Upos>{Upos::DET, Upos::ADJ, Upos::NOUN, Upos::VERB});
  CHECK(tags_of("$") == std::vector<Upos>{Upos::SYM});
  // Month names are proper nouns even when their lowercase form is another word.
  CHECK(tags_of("It rained in May 2020.")[3] == Upos::PROPN);
}

TEST_CASE("pos tagging property: every token is tagged, forced classes hold") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto doc = annotate(stylo::testing::random_document(rng));
    for (const auto& t : doc.tokens) {
      CAPTURE(t.surface);
      if (auto forced = forced_tag(t.surface)) CHECK(t.pos == *forced);
      CHECK(static_cast<std::size_t>(t.pos) < kUposCount);
      CHECK(t.lemma == to_lower_ascii(t.lemma));
      CHECK(t.syllable_count == count_syllables(t.surface));
    }
  }
}

TEST_CASE("annotation is deterministic and idempotent") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const auto text = stylo::testing::random_document(rng);
    CHECK(annotate(text) == annotate(text));
    auto doc = annotate(text);
    auto again = doc;
    pos_tag(again, TaggerModel::builtin());
    CHECK(again.tokens == doc.tokens);
  }
}

TEST_CASE("lemmatize examples") {
  const auto& lem = Lemmatizer::builtin();
  CHECK(lem.lemmatize("cats", Upos::NOUN) == "cat");
  CHECK(lem.lemmatize("running", Upos::VERB) == "run");
  CHECK(lem.lemmatize("Paris", Upos::PROPN) == "paris");
  CHECK(lem.lemmatize("was", Upos::AUX) == "be");
  CHECK(lem.lemmatize("cities", Upos::NOUN) == "city");
  CHECK(lem.lemmatize("boxes", Upos::NOUN) == "box");
  CHECK(lem.lemmatize("making", Upos::VERB) == "make");
  CHECK(lem.lemmatize("visited", Upos::VERB) == "visit");
  CHECK(lem.lemmatize("bigger", Upos::ADJ) == "big");
  CHECK(lem.lemmatize("glass", Upos::NOUN) == "glass");
}

TEST_CASE("entity examples") {
  CHECK(entities_of("").empty());
  const auto money = entities_of("It costs 50 dollars");
  REQUIRE(money.size() == 1);
  CHECK(money[0].first == "50");
  CHECK((money[0].second == EntityType::MONEY || money[0].second == EntityType::CARDINAL));
  CHECK(entities_of("The French eat bread") ==
        std::vector<std::pair<std::string, EntityType>>{{"French", EntityType::NORP}});
  CHECK(entities_of("It costs $5.") == std::vector<std::pair<std::string, EntityType>>{{"$ 5", EntityType::MONEY}});
  CHECK(entities_of("Prices rose 5 percent in May 2020.") ==
        std::vector<std::pair<std::string, EntityType>>{{"5 percent", EntityType::PERCENT},
                                                        {"May 2020", EntityType::DATE}});
  CHECK(entities_of("She came first after 3 hours.") ==
        std::vector<std::pair<std::string, EntityType>>{{"first", EntityType::ORDINAL}, {"3 hours", EntityType::TIME}});
  CHECK(entities_of("We walked 5 miles.") ==
        std::vector<std::pair<std::string, EntityType>>{{"5 miles", EntityType::QUANTITY}});
}

TEST_CASE("entity spans lie inside one sentence and do not overlap") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto doc = annotate(stylo::testing::random_document(rng));
    std::size_t previous_end = 0;
    for (const auto& e : doc.entities) {
      CHECK(e.tokens.begin >= previous_end);
      CHECK(e.tokens.end > e.tokens.begin);
      previous_end = e.tokens.end;
      bool inside = false;
      for (const auto& s : doc.sentences) inside |= s.begin <= e.tokens.begin && e.tokens.end <= s.end;
      CHECK(inside);
    }
  }
}

TEST_CASE("gazetteer parsing errors carry line numbers") {
  CHECK_THROWS_AS(Gazetteer::parse("STYLO-GAZETTEER\nversion 1\nNORP\n"), ParseError);
  CHECK_THROWS_AS(Gazetteer::parse("STYLO-GAZETTEER\nversion 1\nBOGUS\tx\n"), ParseError);
  CHECK_THROWS_AS(Gazetteer::load("/nonexistent/gazetteer.txt"), IoError);
  const auto g = Gazetteer::parse("STYLO-GAZETTEER\nversion 1\nNORP\tMartians\n");
  CHECK(g.lookup("Martians") == EntityType::NORP);
}

TEST_CASE("fixture sentences annotate as hand-derived") {
  for (const auto& f : stylo::testing::fixtures()) {
    CAPTURE(f.text);
    const auto doc = annotate(f.text);
    REQUIRE(doc.tokens.size() == f.tokens.size());
    for (std::size_t i = 0; i < f.tokens.size(); ++i) {
      CAPTURE(f.tokens[i].surface);
      CHECK(doc.tokens[i].surface == f.tokens[i].surface);
      CHECK(doc.tokens[i].pos == f.tokens[i].pos);
      CHECK(doc.tokens[i].lemma == f.tokens[i].lemma);
      CHECK(doc.tokens[i].syllable_count == f.tokens[i].syllables);
      CHECK(doc.tokens[i].is_stopword == f.tokens[i].stop);
    }
    CHECK(doc.sentences.size() == f.sentences);
  }
}

TEST_CASE("tagger training") {
  const std::string toy =
      "Time\tNOUN\nflies\tVERB\nfast\tADV\n.\tPUNCT\n\n"
      "Fruit\tNOUN\nflies\tNOUN\nlike\tVERB\nbananas\tNOUN\n.\tPUNCT\n";
  const auto sentences = parse_tagged_corpus(toy);
  REQUIRE(sentences.size() == 2);

  SUBCASE("zero epochs is the lexicon fallback") {
    TaggerTrainingOptions options;
    options.epochs = 0;
    options.holdout_fraction = 0;
    const auto result = train_tagger(sentences, options);
    CHECK_FALSE(result.model.has_weights());
    CHECK(result.model.serialize() == TaggerModel::builtin().serialize());
  }
  SUBCASE("a tiny corpus is memorized") {
    TaggerTrainingOptions options;
    options.epochs = 10;
    options.holdout_fraction = 0;
    const auto result = train_tagger(sentences, options);
    CHECK(tagging_accuracy(result.model, sentences) == 1.0);
    CHECK_FALSE(result.holdout_accuracy.has_value());
  }
  SUBCASE("training is deterministic and round-trips") {
    TaggerTrainingOptions options;
    options.seed = 9;
    options.holdout_fraction = 0.5;
    const auto a = train_tagger(sentences, options);
    const auto b = train_tagger(sentences, options);
    CHECK(a.model.serialize() == b.model.serialize());
    CHECK(TaggerModel::parse(a.model.serialize()).serialize() == a.model.serialize());
    CHECK(a.train_sentences + a.holdout_sentences == 2);
  }
  SUBCASE("malformed input") {
    try {
      parse_tagged_corpus("word\tNOUN\nbroken line\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_tagged_corpus("word\tNOPE\n"), ValidationError);
    CHECK_THROWS_AS(TaggerModel::parse("not a model"), ValidationError);
    CHECK_THROWS_AS(TaggerModel::load("/nonexistent/tagger.model"), IoError);
  }
}
