#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stylo/feature_matrix.hpp"
#include "stylo/svm.hpp"

namespace stylo {

enum class StopRule {
  // Stop when the best candidate improves holdout accuracy by < tolerance.
  marginal,
  // Keep adding the best candidate until accuracy is within tolerance of the
  // all-features model.
  within_full,
};

enum class StopReason { tolerance, exhausted, cap };
std::string_view stop_reason_name(StopReason reason);

struct SelectionConfig {
  double tolerance = 0.001;
  std::optional<std::size_t> cap;
  // Accept the first round's best feature unconditionally.
  bool warm_up = false;
  StopRule rule = StopRule::marginal;
  unsigned threads = 1;
};

struct SelectionResult {
  std::vector<std::string> ordered_features;
  std::vector<double> accuracy_path;
  StopReason stop_reason = StopReason::tolerance;
  // Majority-class accuracy on the holdout; the reference for the first step.
  double baseline_accuracy = 0.0;
  // Only computed for StopRule::within_full.
  std::optional<double> full_accuracy;
};

// Greedy sequential forward selection. Each round trains one SVM per unused
// column of `train` (added to the current set) and accepts the one with the
// best holdout accuracy, ties broken by name. Throws DegenerateDataError if
// either split lacks a class.
SelectionResult select_features(const FeatureMatrix& train, const FeatureMatrix& holdout,
                                const TrainConfig& config, const SelectionConfig& options = {});

// "step,feature,holdout_accuracy"
std::string selection_csv(const SelectionResult& result);

}  // namespace stylo
