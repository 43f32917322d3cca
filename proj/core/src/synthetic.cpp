#include "stylo/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "stylo/error.hpp"
#include "stylo/util.hpp"

namespace stylo {
namespace {

constexpr std::size_t kSentences = 3;
constexpr std::size_t kQuantifierSlots = 3 * kSentences;
constexpr std::size_t kModifierSlots = 2 * kSentences;

std::size_t draw_count(Rng& rng, double mean, double sd, std::size_t max) {
  const double v = std::round(rng.normal(mean, sd));
  return static_cast<std::size_t>(std::clamp(v, 0.0, static_cast<double>(max)));
}

// Picks which of `slots` positions are "on", exactly `count` of them.
std::vector<bool> choose_slots(Rng& rng, std::size_t slots, std::size_t count) {
  std::vector<bool> on(slots, false);
  std::fill(on.begin(), on.begin() + static_cast<std::ptrdiff_t>(count), true);
  rng.shuffle(on);
  return on;
}

class WordPicker {
 public:
  WordPicker(Rng& rng, double reuse) : rng_(rng), reuse_(reuse) {}

  const std::string& pick(const std::vector<std::string>& pool, std::vector<std::size_t>& used) {
    if (!used.empty() && rng_.uniform() < reuse_) return pool[used[rng_.below(used.size())]];
    const std::size_t k = rng_.below(pool.size());
    used.push_back(k);
    return pool[k];
  }

 private:
  Rng& rng_;
  double reuse_;
};

std::string capitalize(std::string word) {
  if (!word.empty() && word[0] >= 'a' && word[0] <= 'z') word[0] = static_cast<char>(word[0] - 'a' + 'A');
  return word;
}

}  // namespace

const SyntheticVocabulary& synthetic_vocabulary() {
  static const SyntheticVocabulary vocab = {
      {"bank", "bird", "boat", "bomb", "book", "card", "cell", "coin", "door", "farm", "fish", "foot", "fork",
       "frog", "gift", "girl", "gold", "hand", "hill", "king", "lamp", "land", "leaf", "moon", "neck", "road",
       "rock", "room", "root", "ring", "salt", "sand", "seed", "ship", "shop", "skin", "snow", "song", "soup",
       "star", "tool", "town", "tree", "wall", "wind", "wolf"},
      {"bent", "blew", "drew", "fell", "felt", "flew", "grew", "held", "hung", "kept", "knew", "left", "lent",
       "lost", "paid", "sang", "sank", "sold", "spun", "swam", "told", "took", "wept", "went"},
      {"calm", "cold", "cool", "dark", "deep", "fast", "flat", "full", "gray", "kind", "long", "loud", "pink",
       "poor", "rich", "slow", "soft", "sour", "tall", "thin", "warm", "weak", "wild"},
      {"down", "from", "near", "with"},
      {"each", "some", "this"},
  };
  return vocab;
}

Corpus generate_synthetic(const SyntheticConfig& config) {
  if (config.groups.empty()) throw ValidationError("synthetic corpus needs at least one group");
  if (!config.group_adjective_shift.empty() && config.group_adjective_shift.size() != config.groups.size()) {
    throw ValidationError("group_adjective_shift must list one value per group");
  }
  if (!(config.positive_rate >= 0.0 && config.positive_rate <= 1.0)) {
    throw ValidationError("positive_rate must be in [0, 1]");
  }
  const auto& vocab = synthetic_vocabulary();
  Rng rng(config.seed);
  Corpus corpus;
  corpus.reserve(config.groups.size() * config.responses_per_group);
  for (std::size_t g = 0; g < config.groups.size(); ++g) {
    const double adjective_shift = config.group_adjective_shift.empty() ? 0.0 : config.group_adjective_shift[g];
    for (std::size_t i = 0; i < config.responses_per_group; ++i) {
      ResponseRecord r;
      r.id = "q" + std::to_string(i);
      r.dataset = config.dataset;
      r.model = config.groups[g];
      r.question = "Synthetic question " + std::to_string(i) + "?";
      r.label = rng.uniform() < config.positive_rate ? 1 : 0;
      r.truth_score = r.label == 1 ? 0.5 + 0.5 * rng.uniform() : 0.5 * rng.uniform();

      const bool shifted = (r.label == 0) != config.inverted;
      const double numeral_mean = config.numeral_mean + (shifted ? config.numeral_shift * config.numeral_sd : 0.0);
      const double reuse_mean = config.reuse_mean + (shifted ? config.reuse_shift * config.reuse_sd : 0.0);
      const std::size_t numerals =
          draw_count(rng, numeral_mean, config.noise_fraction * config.numeral_sd, kQuantifierSlots);
      const double reuse = std::clamp(rng.normal(reuse_mean, config.noise_fraction * config.reuse_sd), 0.0, 0.95);
      const std::size_t adjectives =
          draw_count(rng, config.adjective_mean + adjective_shift, config.adjective_sd, kModifierSlots);

      const auto numeral_at = choose_slots(rng, kQuantifierSlots, numerals);
      const auto adjective_at = choose_slots(rng, kModifierSlots, adjectives);
      WordPicker picker(rng, reuse);
      std::vector<std::size_t> used_nouns, used_verbs, used_adjectives;
      std::size_t q = 0;
      std::size_t m = 0;
      auto quantifier = [&]() {
        const bool numeral = numeral_at[q++];
        if (numeral) return std::to_string(10 + rng.below(90));
        return vocab.determiners[rng.below(vocab.determiners.size())];
      };
      auto modifier = [&]() {
        return adjective_at[m++] ? picker.pick(vocab.adjectives, used_adjectives)
                                 : picker.pick(vocab.nouns, used_nouns);
      };
      std::string text;
      for (std::size_t s = 0; s < kSentences; ++s) {
        std::vector<std::string> words;
        words.push_back(capitalize(quantifier()));
        words.push_back(modifier());
        words.push_back(picker.pick(vocab.nouns, used_nouns));
        words.push_back(picker.pick(vocab.verbs, used_verbs));
        words.push_back(quantifier());
        words.push_back(modifier());
        words.push_back(picker.pick(vocab.nouns, used_nouns));
        words.push_back(vocab.prepositions[rng.below(vocab.prepositions.size())]);
        words.push_back(quantifier());
        words.push_back(picker.pick(vocab.nouns, used_nouns));
        if (s > 0) text += ' ';
        for (std::size_t w = 0; w < words.size(); ++w) {
          if (w > 0) text += ' ';
          text += words[w];
        }
        text += '.';
      }
      r.response = std::move(text);
      corpus.push_back(std::move(r));
    }
  }
  return corpus;
}

}  // namespace stylo
