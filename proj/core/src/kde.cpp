#include <algorithm>
#include <cmath>
#include <numbers>

#include "stylo/error.hpp"
#include "stylo/stats.hpp"
#include "stylo/util.hpp"

namespace stylo {

double silverman_bandwidth(std::span<const double> samples) {
  const auto n = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= n;
  double sd = 0.0;
  if (samples.size() > 1) {
    double ss = 0.0;
    for (double x : samples) ss += (x - mean) * (x - mean);
    sd = std::sqrt(ss / (n - 1.0));
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
  double spread = std::min(sd, iqr / 1.34);
  if (spread <= 0.0) spread = sd;
  const double h = 0.9 * spread * std::pow(n, -0.2);
  if (h > 0.0 && std::isfinite(h)) return h;
  return 1e-6 * std::max(1.0, std::abs(mean));
}

double kde_density_at(std::span<const double> samples, double bandwidth, double x) {
  const double norm = 1.0 / (static_cast<double>(samples.size()) * bandwidth * std::sqrt(2.0 * std::numbers::pi));
  double s = 0.0;
  for (double v : samples) {
    const double z = (x - v) / bandwidth;
    s += std::exp(-0.5 * z * z);
  }
  return s * norm;
}

double trapezoid_integral(std::span<const double> grid, std::span<const double> values) {
  if (grid.size() != values.size()) throw ContractError("trapezoid_integral: length mismatch");
  double s = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) s += 0.5 * (values[i] + values[i - 1]) * (grid[i] - grid[i - 1]);
  return s;
}

KdeCurve kde(std::span<const double> samples, const KdeOptions& options) {
  if (samples.empty()) throw ContractError("kde: no samples");
  if (options.grid_size == 0) throw ContractError("kde: grid size must be positive");
  for (double v : samples) {
    if (!std::isfinite(v)) throw ContractError("kde: non-finite sample");
  }
  KdeCurve curve;
  if (options.bandwidth) {
    if (!(*options.bandwidth > 0.0)) throw ContractError("kde: bandwidth must be positive");
    curve.bandwidth = *options.bandwidth;
  } else {
    curve.bandwidth = silverman_bandwidth(samples);
  }
  const double h = curve.bandwidth;
  const auto [min_it, max_it] = std::minmax_element(samples.begin(), samples.end());
  const double lo = *min_it - 4.0 * h;
  const double hi = *max_it + 4.0 * h;
  const std::size_t points = options.grid_size;
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = points == 1 ? 0.5 * (lo + hi)
                          : i + 1 == points ? hi
                                            : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  if (options.refine && points > 1 && (hi - lo) / static_cast<double>(points - 1) > 0.5 * h) {
    // Half-bandwidth steps out to 6h around every distinct sample, then
    // doubling steps, so each bump is resolved wherever it sits.
    std::vector<double> offsets;
    for (int k = 0; k <= 12; ++k) offsets.push_back(0.5 * k);
    for (double z = 8.0; z * h < hi - lo; z *= 2.0) offsets.push_back(z);
    std::vector<double> distinct(samples.begin(), samples.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (double v : distinct) {
      for (double z : offsets) {
        for (double x : {v - z * h, v + z * h}) {
          if (x > lo && x < hi) grid.push_back(x);
        }
      }
    }
    std::sort(grid.begin(), grid.end());
    // Drop points closer than h/4 to their predecessor; both ends stay.
    std::vector<double> thinned = {grid.front()};
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
      if (grid[i] - thinned.back() >= 0.25 * h) thinned.push_back(grid[i]);
    }
    if (grid.back() - thinned.back() < 0.25 * h && thinned.size() > 1) thinned.pop_back();
    thinned.push_back(grid.back());
    grid = std::move(thinned);
  }
  curve.grid = std::move(grid);
  curve.density.resize(curve.grid.size());
  for (std::size_t i = 0; i < curve.grid.size(); ++i) curve.density[i] = kde_density_at(samples, h, curve.grid[i]);
  return curve;
}

KdeCurve kde(std::span<const double> samples, std::size_t grid_size) {
  KdeOptions options;
  options.grid_size = grid_size;
  return kde(samples, options);
}

std::string kde_csv(const KdeCurve& curve) {
  std::string out = "grid,density\n";
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    out += format_double(curve.grid[i]);
    out += ',';
    out += format_double(curve.density[i]);
    out += '\n';
  }
  return out;
}

}  // namespace stylo
