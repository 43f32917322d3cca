#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "stylo/select.hpp"
#include "stylo/svm.hpp"

namespace {

void BM_TrainPipeline(benchmark::State& state) {
  const auto matrix = stylo::bench::synthetic_matrix(static_cast<std::size_t>(state.range(0)));
  stylo::Preprocessing prep;
  prep.minmax = true;
  for (auto _ : state) benchmark::DoNotOptimize(stylo::train_pipeline(matrix, {}, prep));
}
BENCHMARK(BM_TrainPipeline)->Arg(100)->Arg(400)->Arg(1600)->Unit(benchmark::kMillisecond);

void BM_PredictAll(benchmark::State& state) {
  const auto matrix = stylo::bench::synthetic_matrix(400);
  stylo::Preprocessing prep;
  prep.minmax = true;
  const auto model = stylo::train_pipeline(matrix, {}, prep);
  for (auto _ : state) benchmark::DoNotOptimize(stylo::predict_all(model, matrix));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * matrix.rows()));
}
BENCHMARK(BM_PredictAll)->Unit(benchmark::kMillisecond);

void BM_SelectFeatures(benchmark::State& state) {
  const auto matrix = stylo::bench::synthetic_matrix(160);
  std::vector<std::size_t> train_rows, holdout_rows;
  for (std::size_t i = 0; i < matrix.rows(); ++i) (i % 4 == 0 ? holdout_rows : train_rows).push_back(i);
  const auto train = matrix.take_rows(train_rows);
  const auto holdout = matrix.take_rows(holdout_rows);
  stylo::SelectionConfig options;
  options.cap = static_cast<std::size_t>(state.range(0));
  options.tolerance = -1.0;
  for (auto _ : state) benchmark::DoNotOptimize(stylo::select_features(train, holdout, {}, options));
}
BENCHMARK(BM_SelectFeatures)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace
