#include <benchmark/benchmark.h>

#include <cocyclem/simplicial.hpp>
#include <cocyclem/smith.hpp>

#include "common.hpp"

namespace {

void BM_CliqueComplex(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto d = bench::random_distances(n, 11);
  const auto g = cocyclem::build_graph(d, n, 0.25);
  for (auto _ : state) benchmark::DoNotOptimize(cocyclem::clique_complex(g));
}
BENCHMARK(BM_CliqueComplex)->Arg(40)->Arg(80)->Arg(160);

void BM_Homology(benchmark::State& state) {
  const auto k = bench::random_rips(static_cast<std::size_t>(state.range(0)), 0.25, 12);
  state.counters["triangles"] = static_cast<double>(k.triangles().size());
  for (auto _ : state) benchmark::DoNotOptimize(cocyclem::homology(k));
}
BENCHMARK(BM_Homology)->Arg(20)->Arg(40)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_SmithBoundary2(benchmark::State& state) {
  const auto k = bench::random_rips(static_cast<std::size_t>(state.range(0)), 0.25, 13);
  const auto m = cocyclem::boundary_matrix(k, 2);
  for (auto _ : state) benchmark::DoNotOptimize(cocyclem::smith_normal_form(m));
}
BENCHMARK(BM_SmithBoundary2)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

}  // namespace
