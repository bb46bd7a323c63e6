#include <benchmark/benchmark.h>

#include <cocyclem/angle.hpp>
#include <cocyclem/cocycle.hpp>

#include "common.hpp"

namespace {

// Noisy coboundary on a random clique complex.
cocyclem::DiscreteCocycle noisy(std::size_t n, std::uint64_t seed) {
  auto k = bench::random_rips(n, 0.3, seed);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-cocyclem::kPi, cocyclem::kPi);
  std::normal_distribution<double> e(0.0, 0.05);
  std::vector<double> phi(n);
  for (auto& p : phi) p = u(rng);
  std::vector<double> theta;
  for (const auto& [i, j] : k.edges()) theta.push_back(cocyclem::wrap_signed(phi[i] - phi[j] + e(rng)));
  return cocyclem::DiscreteCocycle(std::move(k), std::move(theta));
}

void BM_Residuals(benchmark::State& state) {
  const auto z = noisy(static_cast<std::size_t>(state.range(0)), 21);
  for (auto _ : state) benchmark::DoNotOptimize(cocyclem::residuals(z));
}
BENCHMARK(BM_Residuals)->Arg(50)->Arg(100);

void BM_IsCoboundary(benchmark::State& state) {
  const auto z = noisy(static_cast<std::size_t>(state.range(0)), 22);
  for (auto _ : state) benchmark::DoNotOptimize(cocyclem::is_coboundary(z));
}
BENCHMARK(BM_IsCoboundary)->Arg(50)->Arg(100);

void BM_Synchronize(benchmark::State& state) {
  const auto z = noisy(static_cast<std::size_t>(state.range(0)), 23);
  cocyclem::SyncOptions opts;
  opts.method = state.range(1) ? cocyclem::SyncMethod::Spectral : cocyclem::SyncMethod::SpanningTree;
  for (auto _ : state) benchmark::DoNotOptimize(cocyclem::synchronize(z, opts));
}
BENCHMARK(BM_Synchronize)->Args({50, 0})->Args({50, 1})->Args({100, 1})->Unit(benchmark::kMicrosecond);

}  // namespace
