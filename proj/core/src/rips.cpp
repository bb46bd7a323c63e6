#include "cocyclem/rips.hpp"

#include <algorithm>
#include <cmath>

#include "cocyclem/errors.hpp"

namespace cocyclem {
namespace {

void validate_distances(std::span<const double> d, std::size_t n) {
  if (n == 0) throw ValidationError("distance matrix is empty");
  if (d.size() != n * n) throw ValidationError("distance matrix must be n x n");
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i * n + i] != 0.0) throw ValidationError("distance matrix must have a zero diagonal");
    for (std::size_t j = i + 1; j < n; ++j) {
      const double x = d[i * n + j];
      if (!std::isfinite(x) || x < 0.0) throw ValidationError("distances must be finite and nonnegative");
      if (x != d[j * n + i]) throw ValidationError("distance matrix must be symmetric");
    }
  }
}

}  // namespace

EpsilonGraph build_graph(std::span<const double> distances, std::size_t n, double epsilon) {
  validate_distances(distances, n);
  if (!(epsilon > 0.0)) throw ValidationError("epsilon must be positive");
  EpsilonGraph g{n, epsilon, {}};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (distances[i * n + j] <= epsilon) g.edges.push_back({i, j});
    }
  }
  return g;
}

SimplicialComplex2 clique_complex(const EpsilonGraph& g) {
  std::vector<std::vector<std::size_t>> upper(g.n);
  for (const auto& [i, j] : g.edges) {
    if (!(i < j) || j >= g.n) throw ValidationError("graph edge out of range");
    upper[i].push_back(j);
  }
  for (auto& nb : upper) std::sort(nb.begin(), nb.end());

  std::vector<Triangle> triangles;
  for (std::size_t i = 0; i < g.n; ++i) {
    for (auto j : upper[i]) {
      // k ranges over common upper neighbours of i and j, k > j.
      auto it_i = std::upper_bound(upper[i].begin(), upper[i].end(), j);
      auto it_j = upper[j].begin();
      while (it_i != upper[i].end() && it_j != upper[j].end()) {
        if (*it_i < *it_j) {
          ++it_i;
        } else if (*it_j < *it_i) {
          ++it_j;
        } else {
          triangles.push_back({i, j, *it_i});
          ++it_i;
          ++it_j;
        }
      }
    }
  }
  auto edges = g.edges;
  std::sort(edges.begin(), edges.end());
  return SimplicialComplex2(g.n, std::move(edges), std::move(triangles));
}

std::vector<SweepRecord> epsilon_sweep(std::span<const double> distances, std::size_t n,
                                       std::span<const double> epsilons) {
  if (!std::is_sorted(epsilons.begin(), epsilons.end())) throw ValidationError("epsilons must be ascending");
  std::vector<SweepRecord> out;
  out.reserve(epsilons.size());
  for (double eps : epsilons) {
    const SimplicialComplex2 k = clique_complex(build_graph(distances, n, eps));
    out.push_back({eps, k.edges().size(), k.triangles().size(), homology(k)});
  }
  return out;
}

std::vector<double> linear_epsilons(double lo, double hi, std::size_t steps) {
  if (steps == 0) throw ValidationError("sweep needs at least one step");
  if (!(lo > 0.0) || hi < lo) throw ValidationError("sweep bounds must satisfy 0 < lo <= hi");
  if (steps == 1) return {lo};
  std::vector<double> out(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    out[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(steps - 1);
  }
  out.back() = hi;
  return out;
}

std::vector<double> distinct_distances(std::span<const double> distances, std::size_t n) {
  validate_distances(distances, n);
  std::vector<double> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) out.push_back(distances[i * n + j]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace cocyclem
