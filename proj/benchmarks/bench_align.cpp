#include <benchmark/benchmark.h>

#include <cocyclem/align.hpp>
#include <cocyclem/phantom.hpp>

namespace {

cocyclem::ImageStack stack(std::size_t n, const cocyclem::PolarGrid& grid) {
  return cocyclem::project_stack(cocyclem::default_molecule(), cocyclem::sample_uniform_directions(n, 5), grid);
}

void BM_DistanceAndAlign(benchmark::State& state) {
  const cocyclem::PolarGrid grid{16, static_cast<std::size_t>(state.range(0)), 6.0};
  const auto s = stack(2, grid);
  for (auto _ : state) benchmark::DoNotOptimize(cocyclem::distance_and_align(s.images[0], s.images[1]));
}
BENCHMARK(BM_DistanceAndAlign)->Arg(32)->Arg(64)->Arg(128);

void BM_PairwiseComparisons(benchmark::State& state) {
  const auto s = stack(static_cast<std::size_t>(state.range(0)), cocyclem::PolarGrid{});
  const auto threads = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(cocyclem::pairwise_comparisons(s, {}, threads));
}
BENCHMARK(BM_PairwiseComparisons)->Args({30, 1})->Args({30, 4})->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_ProjectStack(benchmark::State& state) {
  const auto truth = cocyclem::sample_uniform_directions(static_cast<std::size_t>(state.range(0)), 6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cocyclem::project_stack(cocyclem::default_molecule(), truth, cocyclem::PolarGrid{}));
  }
}
BENCHMARK(BM_ProjectStack)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace
