#pragma once

#include <cocyclem/rips.hpp>

#include <cmath>
#include <random>
#include <vector>

namespace bench {

// Distance matrix of n random points in the unit square.
inline std::vector<double> random_distances(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<std::array<double, 2>> pts(n);
  for (auto& p : pts) p = {u(rng), u(rng)};
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]);
  return d;
}

inline cocyclem::SimplicialComplex2 random_rips(std::size_t n, double eps, std::uint64_t seed) {
  const auto d = random_distances(n, seed);
  return cocyclem::clique_complex(cocyclem::build_graph(d, n, eps));
}

}  // namespace bench
