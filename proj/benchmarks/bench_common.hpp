#pragma once

#include <string>
#include <vector>

#include "stylo/annotator.hpp"
#include "stylo/feature_matrix.hpp"
#include "stylo/features.hpp"
#include "stylo/synthetic.hpp"

namespace stylo::bench {

inline Corpus synthetic_corpus(std::size_t per_group, std::uint64_t seed = 1) {
  SyntheticConfig config;
  config.groups = {"ada"};
  config.group_adjective_shift = {0.0};
  config.responses_per_group = per_group;
  config.seed = seed;
  return generate_synthetic(config);
}

inline FeatureMatrix synthetic_matrix(std::size_t rows, unsigned threads = 1) {
  const Corpus corpus = synthetic_corpus(rows);
  std::vector<std::string> ids, texts;
  std::vector<int> labels;
  for (const auto& r : corpus) {
    ids.push_back(r.id);
    texts.push_back(r.response);
    labels.push_back(r.label);
  }
  return extract_matrix(ids, texts, labels, FeatureRegistry::builtin(), Annotator::builtin(), threads);
}

}  // namespace stylo::bench
