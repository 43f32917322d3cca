#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stylo/feature_matrix.hpp"
#include "stylo/stats.hpp"

namespace stylo {

struct TrainConfig {
  double c = 1.0;
  // Kernel width; empty means the "scale" policy 1 / (d * Var(X)).
  std::optional<double> gamma;
  double kkt_tolerance = 1e-3;
  int max_passes = 100;
  std::uint64_t seed = 0;
  // C_k = C * n / (2 * n_k) per class k.
  bool class_weighted = false;
  // Hard cap on successful pair updates.
  std::size_t max_iterations = 1000000;
};

// Resolved "scale" gamma for a row-major block; 1 when the variance is 0.
double scale_gamma(std::span<const double> values, std::size_t dims);

struct SvmModel {
  TrainConfig config;
  double gamma = 1.0;
  double c = 1.0;
  // Per-class box bounds {C_0, C_1}; both equal c unless class-weighted.
  std::array<double, 2> class_c{1.0, 1.0};
  double bias = 0.0;
  // Columns expected by predict(), in order.
  std::vector<std::string> feature_names;
  std::string registry_version;
  // Fitted over feature_names and applied before the subset below.
  std::optional<MinMaxParams> normalization;
  std::optional<std::vector<std::string>> selected_features;
  // Rows in the transformed (normalized, subset) space.
  std::vector<std::vector<double>> support_vectors;
  // alpha_i * y_i with y in {-1, +1}.
  std::vector<double> dual_coefficients;

  std::size_t input_dims() const { return feature_names.size(); }
  std::size_t kernel_dims() const;
};

struct TrainStats {
  std::size_t iterations = 0;
  std::size_t sweeps = 0;
  bool hit_iteration_cap = false;
};

// SMO on the dual with K(a, b) = exp(-gamma * |a - b|^2). Labels are 0/1.
// Rows are put into a canonical order first, so the result does not depend
// on the input row order. Throws DegenerateDataError for a single class and
// ValidationError for non-finite input.
SvmModel train(const FeatureMatrix& matrix, std::span<const int> labels, const TrainConfig& config,
               TrainStats* stats = nullptr);

struct Preprocessing {
  bool minmax = false;
  std::optional<std::vector<std::string>> selected_features;
};

// Fits MinMax on `matrix` (if requested), restricts to the selected columns
// and trains; the model applies the same steps at prediction time.
SvmModel train_pipeline(const FeatureMatrix& matrix, const TrainConfig& config, const Preprocessing& prep,
                        TrainStats* stats = nullptr);

struct Prediction {
  int label = 0;
  double decision_value = 0.0;
};

// `row` is in feature_names order. Label 1 iff the decision value is > 0.
Prediction predict(const SvmModel& model, std::span<const double> row);
// Decision value for a row already in the kernel space.
double decision_function(const SvmModel& model, std::span<const double> transformed);
std::vector<double> transform_row(const SvmModel& model, std::span<const double> row);

// Picks the model's columns out of `matrix` by name.
std::vector<Prediction> predict_all(const SvmModel& model, const FeatureMatrix& matrix);

struct Evaluation {
  std::size_t n = 0;
  double accuracy = 0.0;
  // confusion[actual][predicted]
  std::array<std::array<std::size_t, 2>, 2> confusion{};
  // Per class; 0 when the class is never predicted / never present.
  std::array<double, 2> precision{};
  std::array<double, 2> recall{};
};

Evaluation evaluate(const SvmModel& model, const FeatureMatrix& matrix, std::span<const int> labels);
double accuracy(const SvmModel& model, const FeatureMatrix& matrix, std::span<const int> labels);

// sum(alpha) - 1/2 sum_ij coef_i coef_j K(sv_i, sv_j)
double dual_objective(const SvmModel& model);

// Throws ValidationError when a stored model breaks 0 < alpha <= C or
// |sum alpha y| <= 1e-6, or has inconsistent dimensions.
void validate_model(const SvmModel& model);

// Versioned JSON ("format": "stylo-svm", "version": 1).
std::string model_to_json(const SvmModel& model);
SvmModel model_from_json(std::string_view text);
void save_model(const SvmModel& model, const std::string& path);
SvmModel load_model(const std::string& path);

}  // namespace stylo
