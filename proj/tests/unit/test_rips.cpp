#include <gtest/gtest.h>

#include <cocyclem/errors.hpp>
#include <cocyclem/rips.hpp>

#include <random>

#include "oracles.hpp"

using namespace cocyclem;

namespace {

std::vector<double> random_metric(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<std::array<double, 2>> pts(n);
  for (auto& p : pts) p = {u(rng), u(rng)};
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]);
  return d;
}

}  // namespace

TEST(Graph, Examples) {
  const std::vector<double> d{0, 2, 2, 2, 0, 2, 2, 2, 0};
  EXPECT_TRUE(build_graph(d, 3, 1.0).edges.empty());
  EXPECT_EQ(build_graph(d, 3, 2.0).edges, (std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}}));
  const auto k1 = clique_complex(build_graph(d, 3, 2.0));
  EXPECT_EQ(k1.triangles().size(), 1u);
  EXPECT_EQ(homology(k1).betti, (std::array<std::size_t, 3>{1, 0, 0}));

  const std::vector<double> four(16, 1.0);
  std::vector<double> z = four;
  for (int i = 0; i < 4; ++i) z[i * 5] = 0;
  const auto k2 = clique_complex(build_graph(z, 4, 1.0));
  EXPECT_EQ(k2.edges().size(), 6u);
  EXPECT_EQ(k2.triangles().size(), 4u);
  EXPECT_EQ(homology(k2).betti, (std::array<std::size_t, 3>{1, 0, 1}));

  // Square: sides 1, diagonals 1.5.
  const std::vector<double> sq{0, 1, 1.5, 1, 1, 0, 1, 1.5, 1.5, 1, 0, 1, 1, 1.5, 1, 0};
  const auto k3 = clique_complex(build_graph(sq, 4, 1.2));
  EXPECT_TRUE(k3.triangles().empty());
  EXPECT_EQ(homology(k3).betti, (std::array<std::size_t, 3>{1, 1, 0}));
}

TEST(Graph, Validation) {
  EXPECT_THROW(build_graph(std::vector<double>{0, 1, 2, 0}, 2, 1.0), ValidationError);
  EXPECT_THROW(build_graph(std::vector<double>{1, 1, 1, 0}, 2, 1.0), ValidationError);
  EXPECT_THROW(build_graph(std::vector<double>{0, -1, -1, 0}, 2, 1.0), ValidationError);
  EXPECT_THROW(build_graph(std::vector<double>{0, 1, 1}, 2, 1.0), ValidationError);
  EXPECT_THROW(build_graph(std::vector<double>{0, 1, 1, 0}, 2, 0.0), ValidationError);
}

TEST(Clique, MatchesBruteForce) {
  std::mt19937_64 rng(31);
  for (int c = 0; c < 30; ++c) {
    const std::size_t n = 3 + rng() % 10;
    const auto d = random_metric(rng, n);
    const double eps = std::uniform_real_distribution<double>(0.1, 0.8)(rng);
    const auto k = clique_complex(build_graph(d, n, eps));
    std::vector<Triangle> expect;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        for (std::size_t e = b + 1; e < n; ++e)
          if (d[a * n + b] <= eps && d[b * n + e] <= eps && d[a * n + e] <= eps) expect.push_back({a, b, e});
    EXPECT_EQ(k.triangles(), expect);
  }
}

TEST(Sweep, ExtremesAndNesting) {
  std::mt19937_64 rng(32);
  const std::size_t n = 9;
  const auto d = random_metric(rng, n);
  const auto eps = linear_epsilons(0.001, 2.0, 21);
  EXPECT_EQ(eps.front(), 0.001);
  EXPECT_EQ(eps.back(), 2.0);
  const auto sweep = epsilon_sweep(d, n, eps);
  EXPECT_EQ(sweep.front().homology.betti[0], n);
  EXPECT_EQ(sweep.back().edge_count, n * (n - 1) / 2);
  EXPECT_EQ(sweep.back().triangle_count, n * (n - 1) * (n - 2) / 6);
  for (std::size_t s = 1; s < sweep.size(); ++s) {
    const auto lo = build_graph(d, n, eps[s - 1]).edges, hi = build_graph(d, n, eps[s]).edges;
    EXPECT_TRUE(std::includes(hi.begin(), hi.end(), lo.begin(), lo.end()));
    EXPECT_GE(sweep[s].edge_count, sweep[s - 1].edge_count);
  }
  EXPECT_THROW(epsilon_sweep(d, n, std::vector<double>{1.0, 0.5}), ValidationError);
}

TEST(Sweep, DistinctDistances) {
  const std::vector<double> d{0, 2, 1, 2, 0, 2, 1, 2, 0};
  EXPECT_EQ(distinct_distances(d, 3), (std::vector<double>{1, 2}));
}
