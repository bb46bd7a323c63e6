// Random cocycles and complexes shared by the unit and acceptance tests.
#pragma once

#include <cocyclem/cocycle.hpp>
#include <cocyclem/rips.hpp>

#include <random>

#include "oracles.hpp"

namespace fixture {

// Clique complex of random points in the unit square.
inline cocyclem::SimplicialComplex2 random_rips(std::mt19937_64& rng, std::size_t n, double eps) {
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<std::array<double, 2>> pts(n);
  for (auto& p : pts) p = {u(rng), u(rng)};
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]);
  return cocyclem::clique_complex(cocyclem::build_graph(d, n, eps));
}

inline std::vector<double> random_angles(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

inline cocyclem::DiscreteCocycle random_cocycle(std::mt19937_64& rng, const cocyclem::SimplicialComplex2& k) {
  return cocyclem::DiscreteCocycle(k, random_angles(rng, k.edges().size()));
}

// theta_ij = wrap(phi_i - phi_j) plus optional Gaussian edge noise.
inline cocyclem::DiscreteCocycle coboundary(const cocyclem::SimplicialComplex2& k, const std::vector<double>& phi,
                                            std::mt19937_64* rng = nullptr, double sigma = 0.0) {
  std::normal_distribution<double> noise(0.0, sigma > 0 ? sigma : 1.0);
  std::vector<double> theta;
  for (const auto& [i, j] : k.edges()) {
    double t = phi[i] - phi[j];
    if (rng && sigma > 0) t += noise(*rng);
    theta.push_back(oracle::wrap(t));
  }
  return cocyclem::DiscreteCocycle(k, theta);
}

inline cocyclem::SimplicialComplex2 complete_graph(std::size_t n, bool with_triangles) {
  std::vector<cocyclem::Edge> edges;
  std::vector<cocyclem::Triangle> tris;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      edges.push_back({i, j});
      if (with_triangles)
        for (std::size_t k = j + 1; k < n; ++k) tris.push_back({i, j, k});
    }
  return cocyclem::SimplicialComplex2(n, edges, tris);
}

// RMS of wrap(est - truth - c) after the best global offset c.
inline double aligned_rms(const std::vector<double>& est, const std::vector<double>& truth) {
  double s = 0, c = 0;
  for (std::size_t i = 0; i < est.size(); ++i) {
    s += std::sin(est[i] - truth[i]);
    c += std::cos(est[i] - truth[i]);
  }
  const double offset = std::atan2(s, c);
  double sq = 0;
  for (std::size_t i = 0; i < est.size(); ++i) {
    const double e = oracle::wrap(est[i] - truth[i] - offset);
    sq += e * e;
  }
  return std::sqrt(sq / static_cast<double>(est.size()));
}

inline double max_aligned_error(const std::vector<double>& est, const std::vector<double>& truth) {
  const double offset = est.empty() ? 0.0 : est[0] - truth[0];
  double m = 0;
  for (std::size_t i = 0; i < est.size(); ++i) m = std::max(m, std::abs(oracle::wrap(est[i] - truth[i] - offset)));
  return m;
}

}  // namespace fixture
