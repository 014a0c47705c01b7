#include <benchmark/benchmark.h>

#include "unicluster/datagen.hpp"
#include "unicluster/density.hpp"
#include "unicluster/gmm.hpp"
#include "unicluster/kmeans.hpp"
#include "unicluster/linalg.hpp"
#include "unicluster/spectral.hpp"

namespace {

using namespace unicluster;

Dataset mixture_data(std::int64_t n) {
  Rng rng(1);
  return blobs(*preset_mixture("fig5"), static_cast<std::size_t>(n), rng);
}

void BM_EStep(benchmark::State& state) {
  const auto data = mixture_data(state.range(0));
  const auto model = *preset_mixture("fig5");
  for (auto _ : state) benchmark::DoNotOptimize(expectation(model, data));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EStep)->RangeMultiplier(4)->Range(256, 16384)->Complexity(benchmark::oN);

void BM_FitEm(benchmark::State& state) {
  const auto data = mixture_data(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fit_em(data, 3, RunConfig{}));
}
BENCHMARK(BM_FitEm)->Arg(1500)->Unit(benchmark::kMillisecond);

void BM_KmeansAssign(benchmark::State& state) {
  const auto data = mixture_data(state.range(0));
  const auto c = kmeans::forgy(data, 8, 0);
  for (auto _ : state) benchmark::DoNotOptimize(kmeans::assign_step(c, data));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KmeansAssign)->RangeMultiplier(4)->Range(256, 16384)->Complexity(benchmark::oN);

void BM_SymEig(benchmark::State& state) {
  const auto data = mixture_data(state.range(0));
  const auto a = njw_affinity(data, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(sym_eig(a));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SymEig)->RangeMultiplier(2)->Range(64, 512)->Complexity(benchmark::oNCubed)->Unit(benchmark::kMillisecond);

void BM_DbscanGraph(benchmark::State& state) {
  const auto data = mixture_data(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dbscan_graph(data, {0.5, 5}));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DbscanGraph)->RangeMultiplier(2)->Range(256, 2048)->Complexity(benchmark::oNSquared)->Unit(benchmark::kMillisecond);

void BM_MeanShift(benchmark::State& state) {
  const auto data = preset("blobs3", 1);
  for (auto _ : state) benchmark::DoNotOptimize(mean_shift(data, 1.5));
}
BENCHMARK(BM_MeanShift)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
