#include <benchmark/benchmark.h>

#include "bench_common.hpp"

namespace {

const std::string kProse =
    "In 1969, Neil Armstrong became the first person to walk on the Moon. The Apollo 11 mission "
    "launched from Florida on July 16 and returned eight days later. About 650 million people "
    "watched the broadcast, which NASA still describes as its proudest moment.";

void BM_Annotate(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(stylo::annotate(kProse));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * kProse.size()));
}
BENCHMARK(BM_Annotate);

void BM_ExtractAll(benchmark::State& state) {
  const auto doc = stylo::annotate(kProse);
  for (auto _ : state) benchmark::DoNotOptimize(stylo::extract_all(doc));
}
BENCHMARK(BM_ExtractAll);

void BM_ExtractMatrix(benchmark::State& state) {
  const auto corpus = stylo::bench::synthetic_corpus(static_cast<std::size_t>(state.range(0)));
  std::vector<std::string> ids, texts;
  std::vector<int> labels;
  for (const auto& r : corpus) {
    ids.push_back(r.id);
    texts.push_back(r.response);
    labels.push_back(r.label);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(stylo::extract_matrix(ids, texts, labels, stylo::FeatureRegistry::builtin(),
                                                   stylo::Annotator::builtin(), 1));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * corpus.size()));
}
BENCHMARK(BM_ExtractMatrix)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

}  // namespace
