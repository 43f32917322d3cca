#include "stylo/select.hpp"

#include <algorithm>
#include <set>

#include "stylo/error.hpp"
#include "stylo/util.hpp"

namespace stylo {
namespace {

void require_both_classes(const std::vector<int>& labels, std::string_view which) {
  const bool has0 = std::find(labels.begin(), labels.end(), 0) != labels.end();
  const bool has1 = std::find(labels.begin(), labels.end(), 1) != labels.end();
  if (!has0 || !has1) throw DegenerateDataError("feature selection: " + std::string(which) + " split is single-class");
}

double holdout_accuracy(const FeatureMatrix& train_set, const FeatureMatrix& holdout,
                        const std::vector<std::string>& features, const TrainConfig& config) {
  const FeatureMatrix sub = train_set.take_columns(features);
  const SvmModel model = train(sub, sub.labels, config);
  return accuracy(model, holdout.take_columns(features), holdout.labels);
}

}  // namespace

std::string_view stop_reason_name(StopReason reason) {
  switch (reason) {
    case StopReason::tolerance: return "tolerance";
    case StopReason::exhausted: return "exhausted";
    case StopReason::cap: return "cap";
  }
  return "tolerance";
}

SelectionResult select_features(const FeatureMatrix& train, const FeatureMatrix& holdout,
                                const TrainConfig& config, const SelectionConfig& options) {
  train.check_shape();
  holdout.check_shape();
  if (train.column_names != holdout.column_names) {
    throw ValidationError("feature selection: train and holdout columns differ");
  }
  require_both_classes(train.labels, "training");
  require_both_classes(holdout.labels, "holdout");

  SelectionResult result;
  const auto ones = static_cast<std::size_t>(std::count(train.labels.begin(), train.labels.end(), 1));
  const int majority = 2 * ones >= train.labels.size() ? 1 : 0;
  const auto hits = std::count(holdout.labels.begin(), holdout.labels.end(), majority);
  result.baseline_accuracy = static_cast<double>(hits) / static_cast<double>(holdout.rows());
  if (options.rule == StopRule::within_full) {
    result.full_accuracy = holdout_accuracy(train, holdout, train.column_names, config);
  }

  std::vector<std::string> remaining = train.column_names;
  std::sort(remaining.begin(), remaining.end());
  double current = result.baseline_accuracy;
  while (true) {
    if (remaining.empty()) {
      result.stop_reason = StopReason::exhausted;
      break;
    }
    if (options.cap && result.ordered_features.size() >= *options.cap) {
      result.stop_reason = StopReason::cap;
      break;
    }
    std::vector<double> scores(remaining.size());
    parallel_for(remaining.size(), options.threads, [&](std::size_t k) {
      auto features = result.ordered_features;
      features.push_back(remaining[k]);
      scores[k] = holdout_accuracy(train, holdout, features, config);
    });
    // `remaining` is sorted, so the first maximum is the name-order tie winner.
    const auto best = static_cast<std::size_t>(std::max_element(scores.begin(), scores.end()) - scores.begin());
    const bool first = result.ordered_features.empty();
    if (options.rule == StopRule::marginal && !(first && options.warm_up) &&
        scores[best] - current < options.tolerance) {
      result.stop_reason = StopReason::tolerance;
      break;
    }
    result.ordered_features.push_back(remaining[best]);
    result.accuracy_path.push_back(scores[best]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
    current = scores[best];
    if (options.rule == StopRule::within_full && current >= *result.full_accuracy - options.tolerance) {
      result.stop_reason = StopReason::tolerance;
      break;
    }
  }
  return result;
}

std::string selection_csv(const SelectionResult& result) {
  std::string out = "step,feature,holdout_accuracy\n";
  for (std::size_t i = 0; i < result.ordered_features.size(); ++i) {
    out += csv_join({std::to_string(i + 1), result.ordered_features[i], format_double(result.accuracy_path[i])});
    out += '\n';
  }
  return out;
}

}  // namespace stylo
