#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stylo/feature_matrix.hpp"

namespace stylo {

struct PearsonResult {
  double r = 0.0;
  bool degenerate = false;
  friend bool operator==(const PearsonResult&, const PearsonResult&) = default;
};

// Product-moment correlation. Zero variance in either input gives
// {0, degenerate}. Throws ContractError on length mismatch or n < 2.
PearsonResult pearson_r(std::span<const double> x, std::span<const double> y);

struct RankingEntry {
  std::string feature;
  double r = 0.0;
  bool degenerate = false;
};

struct FeatureRanking {
  std::vector<RankingEntry> entries;
};

// Correlation of every column with the labels, sorted by r descending and
// then by name. Throws DegenerateDataError for a single-class label vector.
FeatureRanking rank_features(const FeatureMatrix& matrix, std::span<const int> labels);

// "rank,feature,r,degenerate" with 1-based ranks.
std::string ranking_csv(const FeatureRanking& ranking);
std::string ranking_csv(std::span<const RankingEntry> entries, std::size_t first_rank);

// Quantile with linear interpolation between order statistics (the common
// "type 7" definition). `sorted` must be ascending and non-empty.
double quantile_sorted(std::span<const double> sorted, double q);

struct KdeOptions {
  std::size_t grid_size = 512;
  // Overrides the rule-of-thumb bandwidth when set (must be positive).
  std::optional<double> bandwidth;
  // When the even grid is coarser than half a bandwidth, points are added
  // around every distinct sample so the trapezoid rule still integrates to 1.
  bool refine = true;
};

struct KdeCurve {
  std::string feature_name;
  std::string group_key;
  std::vector<double> grid;
  std::vector<double> density;
  double bandwidth = 0.0;
};

// Silverman's rule: 0.9 * min(sd, IQR/1.34) * n^(-1/5), using sd when the
// IQR is 0, and 1e-6 * max(1, |mean|) when both are 0.
double silverman_bandwidth(std::span<const double> samples);

// Gaussian KDE on an ascending grid over [min - 4h, max + 4h]: grid_size
// evenly spaced points plus any refinement points.
// Throws ContractError for empty or non-finite samples.
KdeCurve kde(std::span<const double> samples, const KdeOptions& options = {});
KdeCurve kde(std::span<const double> samples, std::size_t grid_size);
double kde_density_at(std::span<const double> samples, double bandwidth, double x);
double trapezoid_integral(std::span<const double> grid, std::span<const double> values);

// "grid,density"
std::string kde_csv(const KdeCurve& curve);

struct MinMaxParams {
  std::vector<std::string> feature_names;
  std::vector<double> min;
  std::vector<double> max;
};

MinMaxParams minmax_fit(const FeatureMatrix& train);
// (v - min) / (max - min) clamped to [0, 1]; constant columns map to 0.
FeatureMatrix minmax_apply(const MinMaxParams& params, const FeatureMatrix& matrix);
void minmax_apply_row(const MinMaxParams& params, std::span<double> row);

}  // namespace stylo
