#include "stylo/tagger.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>

#include "stylo/error.hpp"
#include "stylo/resources.hpp"
#include "stylo/util.hpp"

namespace stylo {
namespace {

constexpr std::string_view kMagic = "STYLO-TAGGER";
constexpr int kFormatVersion = 1;

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::string suffix(std::string_view word, std::size_t n) {
  return std::string(word.size() <= n ? word : word.substr(word.size() - n));
}

std::string normalize(std::string_view word) {
  if (word.find('-') != std::string_view::npos && word.front() != '-') return "!HYPHEN";
  if (word.size() == 4 && std::all_of(word.begin(), word.end(), is_digit)) return "!YEAR";
  if (!word.empty() && is_digit(word.front())) return "!DIGITS";
  return to_lower_ascii(word);
}

std::string shape(std::string_view word) {
  std::string out;
  for (char c : word) {
    char s = c;
    if (is_upper(c)) {
      s = 'X';
    } else if (is_lower(c)) {
      s = 'x';
    } else if (is_digit(c)) {
      s = 'd';
    }
    if (out.size() < 2 || out[out.size() - 1] != s || out[out.size() - 2] != s) out += s;
  }
  return out;
}

struct SentenceContext {
  std::vector<std::string> normalized;  // padded with two start and two end markers
  explicit SentenceContext(std::span<const std::string> words) {
    normalized.reserve(words.size() + 4);
    normalized.emplace_back("-START-");
    normalized.emplace_back("-START2-");
    for (const auto& w : words) normalized.push_back(normalize(w));
    normalized.emplace_back("-END-");
    normalized.emplace_back("-END2-");
  }
};

std::vector<std::string> extract_features(std::size_t i, std::string_view word, const SentenceContext& ctx,
                                          std::string_view prev, std::string_view prev2,
                                          std::string_view lex_tag) {
  const std::size_t k = i + 2;
  const std::string& w = ctx.normalized[k];
  std::vector<std::string> f;
  f.reserve(16);
  f.emplace_back("bias");
  f.push_back("w=" + w);
  f.push_back("s3=" + suffix(w, 3));
  f.push_back("p1=" + std::string(word.substr(0, 1)));
  f.push_back("t-1=" + std::string(prev));
  f.push_back("t-2=" + std::string(prev2));
  f.push_back("t-1t-2=" + std::string(prev) + "|" + std::string(prev2));
  f.push_back("t-1w=" + std::string(prev) + "|" + w);
  f.push_back("w-1=" + ctx.normalized[k - 1]);
  f.push_back("s3-1=" + suffix(ctx.normalized[k - 1], 3));
  f.push_back("w-2=" + ctx.normalized[k - 2]);
  f.push_back("w+1=" + ctx.normalized[k + 1]);
  f.push_back("s3+1=" + suffix(ctx.normalized[k + 1], 3));
  f.push_back("w+2=" + ctx.normalized[k + 2]);
  f.push_back("lex=" + std::string(lex_tag));
  f.push_back("shape=" + shape(word));
  return f;
}

struct Prediction {
  Upos tag;
  bool from_weights;
};

// Scores the features; falls back when nothing fires or the best score is tied
// and the fallback tag is among the tied set.
Prediction predict(const std::unordered_map<std::string, TaggerModel::Weights>& weights,
                   const std::vector<std::string>& features, Upos fallback) {
  TaggerModel::Weights scores{};
  bool fired = false;
  for (const auto& feature : features) {
    const auto it = weights.find(feature);
    if (it == weights.end()) continue;
    fired = true;
    for (std::size_t t = 0; t < kUposCount; ++t) scores[t] += it->second[t];
  }
  if (!fired) return {fallback, false};
  const double best = *std::max_element(scores.begin(), scores.end());
  if (scores[static_cast<std::size_t>(fallback)] == best) return {fallback, true};
  for (std::size_t t = 0; t < kUposCount; ++t) {
    if (scores[t] == best) return {static_cast<Upos>(t), true};
  }
  return {fallback, false};
}

bool ends_with_any(std::string_view word, std::initializer_list<std::string_view> suffixes) {
  return std::any_of(suffixes.begin(), suffixes.end(),
                     [&](std::string_view s) { return word.size() > s.size() + 1 && word.ends_with(s); });
}

// Suffix guess for an unknown lowercase word; empty when no rule applies.
std::optional<Upos> suffix_guess(std::string_view lower) {
  if (ends_with_any(lower, {"ly"})) return Upos::ADV;
  if (ends_with_any(lower, {"ing", "ed"})) return Upos::VERB;
  if (ends_with_any(lower, {"ize", "ise", "ify"})) return Upos::VERB;
  if (ends_with_any(lower, {"ous", "ful", "ive", "able", "ible", "al", "ic", "less", "ish", "ary"})) {
    return Upos::ADJ;
  }
  if (ends_with_any(lower, {"tion", "sion", "ment", "ness", "ity", "ism", "ist", "er", "or", "ship", "hood",
                            "ance", "ence", "age", "ure"})) {
    return Upos::NOUN;
  }
  return std::nullopt;
}

bool is_month_name(std::string_view word) {
  static const std::set<std::string_view> months = {"January", "February", "March",     "April",   "May",      "June",
                                                    "July",    "August",   "September", "October", "November", "December"};
  return months.contains(word);
}

bool is_ordinal_number(std::string_view word) {
  if (word.size() < 3 || !is_digit(word.front())) return false;
  const std::string tail = to_lower_ascii(word.substr(word.size() - 2));
  if (tail != "st" && tail != "nd" && tail != "rd" && tail != "th") return false;
  return std::all_of(word.begin(), word.end() - 2, is_digit);
}

}  // namespace

std::optional<Upos> forced_tag(std::string_view surface) {
  if (is_numeric_token(surface)) return Upos::NUM;
  if (is_symbol_token(surface)) return Upos::SYM;
  if (is_punctuation_token(surface)) return Upos::PUNCT;
  return std::nullopt;
}

const TaggerModel& TaggerModel::builtin() {
  static const TaggerModel model = parse(resources::embedded(resources::kTaggerLexicon));
  return model;
}

TaggerModel TaggerModel::load(const std::string& path) { return parse(read_file(path)); }

TaggerModel TaggerModel::parse(std::string_view text) {
  const auto lines = resources::read_versioned(text, kMagic, kFormatVersion);
  TaggerModel model;
  std::size_t i = 0;
  auto read_count = [&](std::string_view keyword) -> std::size_t {
    if (i >= lines.size() || !lines[i].text.starts_with(std::string(keyword) + " ")) {
      throw ParseError("expected '" + std::string(keyword) + " <count>'", i < lines.size() ? lines[i].number : 0);
    }
    const std::string_view digits = std::string_view(lines[i].text).substr(keyword.size() + 1);
    std::size_t n = 0;
    const auto r = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (r.ec != std::errc() || r.ptr != digits.data() + digits.size()) {
      throw ParseError("malformed count", lines[i].number);
    }
    ++i;
    return n;
  };
  const std::size_t lexicon_size = read_count("lexicon");
  for (std::size_t k = 0; k < lexicon_size; ++k, ++i) {
    if (i >= lines.size()) throw ParseError("truncated lexicon section", lines.empty() ? 0 : lines.back().number);
    const std::string& line = lines[i].text;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) throw ParseError("malformed lexicon entry", lines[i].number);
    const auto tag = parse_upos(std::string_view(line).substr(tab + 1));
    if (!tag) throw ParseError("unknown tag in lexicon entry", lines[i].number);
    model.lexicon_[line.substr(0, tab)] = *tag;
  }
  const std::size_t weight_lines = read_count("weights");
  for (std::size_t k = 0; k < weight_lines; ++k, ++i) {
    if (i >= lines.size()) throw ParseError("truncated weights section", lines.empty() ? 0 : lines.back().number);
    const std::string& line = lines[i].text;
    const auto tab1 = line.find('\t');
    const auto tab2 = tab1 == std::string::npos ? std::string::npos : line.find('\t', tab1 + 1);
    if (tab2 == std::string::npos) throw ParseError("malformed weight entry", lines[i].number);
    const auto tag = parse_upos(std::string_view(line).substr(tab1 + 1, tab2 - tab1 - 1));
    if (!tag) throw ParseError("unknown tag in weight entry", lines[i].number);
    double value = 0.0;
    try {
      value = parse_double(std::string_view(line).substr(tab2 + 1));
    } catch (const ValidationError&) {
      throw ParseError("malformed weight value", lines[i].number);
    }
    model.weights_[line.substr(0, tab1)][static_cast<std::size_t>(*tag)] = value;
  }
  for (; i < lines.size(); ++i) {
    if (!lines[i].text.empty()) throw ParseError("unexpected trailing content", lines[i].number);
  }
  return model;
}

std::size_t TaggerModel::weight_count() const {
  std::size_t n = 0;
  for (const auto& [feature, w] : weights_) {
    n += static_cast<std::size_t>(std::count_if(w.begin(), w.end(), [](double v) { return v != 0.0; }));
  }
  return n;
}

std::string TaggerModel::serialize() const {
  std::string out;
  out += std::string(kMagic) + "\nversion " + std::to_string(kFormatVersion) + "\n";
  std::map<std::string, Upos> lexicon(lexicon_.begin(), lexicon_.end());
  out += "lexicon " + std::to_string(lexicon.size()) + "\n";
  for (const auto& [word, tag] : lexicon) {
    out += word;
    out += '\t';
    out += upos_name(tag);
    out += '\n';
  }
  std::map<std::string, Weights> weights(weights_.begin(), weights_.end());
  out += "weights " + std::to_string(weight_count()) + "\n";
  for (const auto& [feature, w] : weights) {
    for (std::size_t t = 0; t < kUposCount; ++t) {
      if (w[t] == 0.0) continue;
      out += feature;
      out += '\t';
      out += upos_name(static_cast<Upos>(t));
      out += '\t';
      out += format_double(w[t]);
      out += '\n';
    }
  }
  return out;
}

void TaggerModel::save(const std::string& path) const { write_file(path, serialize()); }

std::optional<Upos> TaggerModel::lexicon_tag(std::string_view word) const {
  if (auto it = lexicon_.find(std::string(word)); it != lexicon_.end()) return it->second;
  if (auto it = lexicon_.find(to_lower_ascii(word)); it != lexicon_.end()) return it->second;
  return std::nullopt;
}

Upos TaggerModel::fallback_tag(std::string_view word, bool sentence_initial) const {
  if (auto forced = forced_tag(word)) return *forced;
  // Month names whose lowercase form is another word ("May", "March").
  if (!sentence_initial && is_month_name(word)) return Upos::PROPN;
  if (auto known = lexicon_tag(word)) return *known;
  if (is_ordinal_number(word)) return Upos::ADJ;
  const bool ascii_letters = std::any_of(word.begin(), word.end(), [](char c) { return is_upper(c) || is_lower(c); });
  if (!ascii_letters) return has_alpha(word) ? Upos::X : Upos::NOUN;
  const std::string lower = to_lower_ascii(word);
  const bool capitalized = is_upper(word.front());
  const bool all_caps =
      word.size() >= 2 && std::none_of(word.begin(), word.end(), is_lower);
  if (all_caps) return Upos::PROPN;
  if (capitalized) {
    if (!sentence_initial) return Upos::PROPN;
    return suffix_guess(lower).value_or(Upos::PROPN);
  }
  if (lower.find('-') != std::string::npos) return Upos::ADJ;
  return suffix_guess(lower).value_or(Upos::NOUN);
}

std::vector<Upos> TaggerModel::tag_sentence(std::span<const std::string> words) const {
  std::vector<Upos> tags;
  tags.reserve(words.size());
  const SentenceContext ctx(words);
  std::string prev = "-START-";
  std::string prev2 = "-START2-";
  bool seen_word = false;
  for (std::size_t i = 0; i < words.size(); ++i) {
    Upos tag;
    if (auto forced = forced_tag(words[i])) {
      tag = *forced;
    } else {
      const Upos fallback = fallback_tag(words[i], !seen_word);
      if (weights_.empty()) {
        tag = fallback;
      } else {
        const auto lex = lexicon_tag(words[i]);
        const auto features =
            extract_features(i, words[i], ctx, prev, prev2, lex ? upos_name(*lex) : std::string_view("?"));
        tag = predict(weights_, features, fallback).tag;
      }
    }
    if (tag != Upos::PUNCT) seen_word = true;
    tags.push_back(tag);
    prev2 = std::move(prev);
    prev = std::string(upos_name(tag));
  }
  return tags;
}

void pos_tag(AnnotatedDocument& doc, const TaggerModel& model) {
  for (const auto& sentence : doc.sentences) {
    std::vector<std::string> words;
    words.reserve(sentence.size());
    for (std::size_t i = sentence.begin; i < sentence.end; ++i) words.push_back(doc.tokens[i].surface);
    const auto tags = model.tag_sentence(words);
    for (std::size_t i = 0; i < tags.size(); ++i) doc.tokens[sentence.begin + i].pos = tags[i];
  }
}

std::vector<TaggedSentence> parse_tagged_corpus(std::string_view text) {
  std::vector<TaggedSentence> sentences;
  TaggedSentence current;
  const auto lines = split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::string& line = lines[n];
    if (line.empty()) {
      if (!current.words.empty()) sentences.push_back(std::move(current));
      current = {};
      continue;
    }
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || line.find('\t', tab + 1) != std::string::npos ||
        tab + 1 == line.size()) {
      throw ParseError("expected 'surface<TAB>tag'", n + 1);
    }
    const auto tag = parse_upos(std::string_view(line).substr(tab + 1));
    if (!tag) {
      throw ValidationError("unknown tag '" + line.substr(tab + 1) + "' on line " + std::to_string(n + 1));
    }
    current.words.push_back(line.substr(0, tab));
    current.tags.push_back(*tag);
  }
  if (!current.words.empty()) sentences.push_back(std::move(current));
  return sentences;
}

class TaggerTrainer {
 public:
  explicit TaggerTrainer(const TaggerModel& base) { model_.lexicon_ = base.lexicon_; }

  void train_sentence(const TaggedSentence& sentence) {
    const SentenceContext ctx(sentence.words);
    std::string prev = "-START-";
    std::string prev2 = "-START2-";
    bool seen_word = false;
    for (std::size_t i = 0; i < sentence.words.size(); ++i) {
      const std::string& word = sentence.words[i];
      Upos guess;
      if (auto forced = forced_tag(word)) {
        guess = *forced;
      } else {
        const Upos fallback = model_.fallback_tag(word, !seen_word);
        const auto lex = model_.lexicon_tag(word);
        const auto features =
            extract_features(i, word, ctx, prev, prev2, lex ? upos_name(*lex) : std::string_view("?"));
        guess = predict(model_.weights_, features, fallback).tag;
        ++instances_;
        if (guess != sentence.tags[i]) {
          for (const auto& f : features) {
            update(f, sentence.tags[i], 1.0);
            update(f, guess, -1.0);
          }
        }
      }
      if (guess != Upos::PUNCT) seen_word = true;
      prev2 = std::move(prev);
      prev = std::string(upos_name(guess));
    }
  }

  TaggerModel finish() {
    TaggerModel out;
    out.lexicon_ = model_.lexicon_;
    if (instances_ == 0) return out;
    for (auto& [feature, weights] : model_.weights_) {
      auto& totals = totals_[feature];
      auto& stamps = stamps_[feature];
      TaggerModel::Weights averaged{};
      bool nonzero = false;
      for (std::size_t t = 0; t < kUposCount; ++t) {
        const double total = totals[t] + static_cast<double>(instances_ - stamps[t]) * weights[t];
        averaged[t] = total / static_cast<double>(instances_);
        nonzero = nonzero || averaged[t] != 0.0;
      }
      if (nonzero) out.weights_.emplace(feature, averaged);
    }
    return out;
  }

 private:
  void update(const std::string& feature, Upos tag, double delta) {
    const auto t = static_cast<std::size_t>(tag);
    auto& weight = model_.weights_[feature][t];
    auto& total = totals_[feature][t];
    auto& stamp = stamps_[feature][t];
    total += static_cast<double>(instances_ - stamp) * weight;
    stamp = instances_;
    weight += delta;
  }

  TaggerModel model_;
  std::unordered_map<std::string, TaggerModel::Weights> totals_;
  std::unordered_map<std::string, std::array<std::uint64_t, kUposCount>> stamps_;
  std::uint64_t instances_ = 0;
};

TaggerTrainingResult train_tagger(std::span<const TaggedSentence> sentences, const TaggerTrainingOptions& options,
                                  const TaggerModel& base) {
  if (options.epochs < 0) throw ContractError("epochs must be nonnegative");
  if (options.holdout_fraction < 0.0 || options.holdout_fraction >= 1.0) {
    throw ContractError("holdout fraction must lie in [0, 1)");
  }
  for (const auto& s : sentences) {
    if (s.words.size() != s.tags.size()) throw ContractError("sentence words and tags differ in length");
  }
  Rng rng(options.seed);
  std::vector<std::size_t> order(sentences.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(order);
  const auto holdout_count =
      static_cast<std::size_t>(static_cast<double>(sentences.size()) * options.holdout_fraction);
  std::vector<TaggedSentence> holdout;
  std::vector<std::size_t> train_idx(order.begin() + static_cast<std::ptrdiff_t>(holdout_count), order.end());
  std::sort(train_idx.begin(), train_idx.end());
  for (std::size_t k = 0; k < holdout_count; ++k) holdout.push_back(sentences[order[k]]);

  TaggerTrainer trainer(base);
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    std::vector<std::size_t> epoch_order = train_idx;
    rng.shuffle(epoch_order);
    for (std::size_t idx : epoch_order) trainer.train_sentence(sentences[idx]);
  }
  TaggerTrainingResult result;
  result.model = trainer.finish();
  result.train_sentences = train_idx.size();
  result.holdout_sentences = holdout.size();
  if (!holdout.empty()) result.holdout_accuracy = tagging_accuracy(result.model, holdout);
  return result;
}

TaggerTrainingResult train_tagger_file(const std::string& path, const TaggerTrainingOptions& options,
                                       const TaggerModel& base) {
  const auto sentences = parse_tagged_corpus(read_file(path));
  return train_tagger(sentences, options, base);
}

double tagging_accuracy(const TaggerModel& model, std::span<const TaggedSentence> sentences) {
  std::size_t total = 0;
  std::size_t correct = 0;
  for (const auto& s : sentences) {
    const auto tags = model.tag_sentence(s.words);
    for (std::size_t i = 0; i < tags.size(); ++i) {
      ++total;
      if (tags[i] == s.tags[i]) ++correct;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
}

}  // namespace stylo
