// Microbenchmarks for the hot paths: surrogate scoring (the inner loop of
// every synthetic study), a whole optimizer run at count budget, and the
// two evaluation primitives that dominate dataset runs.

#include <cstdint>
#include <vector>

#include <benchmark/benchmark.h>

#include "naiveml/metrics.hpp"
#include "naiveml/optimizer.hpp"
#include "naiveml/rng.hpp"
#include "naiveml/splits.hpp"
#include "naiveml/surrogate.hpp"

namespace {

using namespace naiveml;

Catalog bench_catalog() {
  std::vector<SurrogateSlotShape> shapes(4);
  shapes[0] = {SlotRole::data_preprocessor, 4, 1};
  shapes[1] = {SlotRole::feature_preprocessor, 4, 1};
  shapes[2] = {SlotRole::feature_preprocessor, 3, 0};
  shapes[3] = {SlotRole::predictor, 6, 2};
  return make_surrogate_catalog(shapes);
}

void BM_SurrogateEval(benchmark::State& state) {
  const Catalog catalog = bench_catalog();
  const SurrogateSurface surface = make_surface(catalog, 0.1, 0.1, 0.5, 7, 0.02);
  Pipeline pipeline;
  pipeline.slots.resize(4);
  pipeline.slots[0] = SlotChoice{"s0_c1", ParamAssignment::defaults_marker()};
  pipeline.slots[2] = SlotChoice{"s2_c2", ParamAssignment::defaults_marker()};
  pipeline.slots[3] = SlotChoice{"s3_c4", ParamAssignment::defaults_marker()};
  for (auto _ : state) {
    benchmark::DoNotOptimize(surrogate_eval(surface, pipeline));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SurrogateEval);

void BM_NaiveRunOnSurrogate(benchmark::State& state) {
  const Catalog catalog = bench_catalog();
  const SurrogateSurface surface = make_surface(catalog, 0.1, 0.1, 0.5, 7, 0.02);
  const EvaluateFn evaluate_fn = make_surrogate_evaluator(surface);
  const std::uint64_t evals = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        naive_automl(catalog, evaluate_fn, Budget::evals(evals), seed++));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(evals));
}
BENCHMARK(BM_NaiveRunOnSurrogate)->Arg(100)->Arg(1000);

void BM_Auroc(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  Rng rng(11);
  std::vector<int> labels(n);
  std::vector<double> scores(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = static_cast<int>(uniform_index(rng, 2));
    // A coarse grid keeps the tie-handling path busy.
    scores[i] = static_cast<double>(uniform_index(rng, 32)) / 31.0;
  }
  labels[0] = 0;
  labels[1] = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(auroc(labels, scores));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_Auroc)->Arg(1000)->Arg(10000);

void BM_KFoldSplits(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(i % 3);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kfold_splits(n, 5, labels, seed++));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_KFoldSplits)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
