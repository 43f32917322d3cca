#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "stylo/stats.hpp"

namespace {

std::vector<double> normal_samples(std::size_t n) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<double> out(n);
  for (auto& v : out) v = dist(rng);
  return out;
}

void BM_Kde(benchmark::State& state) {
  const auto samples = normal_samples(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(stylo::kde(samples, 512));
}
BENCHMARK(BM_Kde)->Arg(200)->Arg(3200)->Unit(benchmark::kMillisecond);

void BM_Pearson(benchmark::State& state) {
  const auto x = normal_samples(static_cast<std::size_t>(state.range(0)));
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = 0.5 * x[i] + static_cast<double>(i % 7);
  for (auto _ : state) benchmark::DoNotOptimize(stylo::pearson_r(x, y));
}
BENCHMARK(BM_Pearson)->Arg(3200);

}  // namespace
