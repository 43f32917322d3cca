#include "stylo/stats.hpp"

#include <algorithm>
#include <cmath>

#include "stylo/error.hpp"
#include "stylo/util.hpp"

namespace stylo {
namespace {

bool constant(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

double mean(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

PearsonResult pearson_r(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ContractError("pearson_r: sequences differ in length");
  if (x.size() < 2) throw ContractError("pearson_r: at least two observations required");
  if (constant(x) || constant(y)) return {0.0, true};
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return {0.0, true};
  const double r = sxy / std::sqrt(sxx * syy);
  return {std::clamp(r, -1.0, 1.0), false};
}

FeatureRanking rank_features(const FeatureMatrix& matrix, std::span<const int> labels) {
  if (labels.size() != matrix.rows()) throw ContractError("rank_features: labels do not align with rows");
  const bool has0 = std::find(labels.begin(), labels.end(), 0) != labels.end();
  const bool has1 = std::find(labels.begin(), labels.end(), 1) != labels.end();
  if (!has0 || !has1) throw DegenerateDataError("ranking undefined for single-class corpus");
  const std::vector<double> y(labels.begin(), labels.end());
  FeatureRanking out;
  out.entries.reserve(matrix.cols());
  for (std::size_t j = 0; j < matrix.cols(); ++j) {
    const auto column = matrix.column(j);
    const auto result = pearson_r(column, y);
    out.entries.push_back({matrix.column_names[j], result.r, result.degenerate});
  }
  std::stable_sort(out.entries.begin(), out.entries.end(), [](const RankingEntry& a, const RankingEntry& b) {
    if (a.r != b.r) return a.r > b.r;
    return a.feature < b.feature;
  });
  return out;
}

std::string ranking_csv(std::span<const RankingEntry> entries, std::size_t first_rank) {
  std::string out = "rank,feature,r,degenerate\n";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    out += csv_join({std::to_string(first_rank + i), entries[i].feature, format_double(entries[i].r),
                     entries[i].degenerate ? "true" : "false"});
    out += '\n';
  }
  return out;
}

std::string ranking_csv(const FeatureRanking& ranking) { return ranking_csv(ranking.entries, 1); }

double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw ContractError("quantile of an empty sample");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

MinMaxParams minmax_fit(const FeatureMatrix& train) {
  if (train.rows() == 0) throw ContractError("minmax_fit: empty training matrix");
  MinMaxParams p;
  p.feature_names = train.column_names;
  p.min.assign(train.cols(), 0.0);
  p.max.assign(train.cols(), 0.0);
  for (std::size_t j = 0; j < train.cols(); ++j) {
    p.min[j] = p.max[j] = train.at(0, j);
    for (std::size_t i = 1; i < train.rows(); ++i) {
      p.min[j] = std::min(p.min[j], train.at(i, j));
      p.max[j] = std::max(p.max[j], train.at(i, j));
    }
  }
  return p;
}

void minmax_apply_row(const MinMaxParams& params, std::span<double> row) {
  if (row.size() != params.min.size()) throw ContractError("minmax_apply: column count mismatch");
  for (std::size_t j = 0; j < row.size(); ++j) {
    const double range = params.max[j] - params.min[j];
    row[j] = range > 0 ? std::clamp((row[j] - params.min[j]) / range, 0.0, 1.0) : 0.0;
  }
}

FeatureMatrix minmax_apply(const MinMaxParams& params, const FeatureMatrix& matrix) {
  if (matrix.cols() != params.min.size()) throw ContractError("minmax_apply: column count mismatch");
  if (!params.feature_names.empty() && params.feature_names != matrix.column_names) {
    throw ContractError("minmax_apply: column names differ from the fitted matrix");
  }
  FeatureMatrix out = matrix;
  for (std::size_t i = 0; i < out.rows(); ++i) minmax_apply_row(params, out.row(i));
  return out;
}

}  // namespace stylo
