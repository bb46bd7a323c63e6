// Independent reference implementations used by the tests. They favour
// obviously-correct code over speed and share nothing with the library.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include <cocyclem/figures.hpp>
#include <cocyclem/simplicial.hpp>

namespace oracle {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;
using Dense = std::vector<std::vector<std::int64_t>>;

inline std::size_t rational_rank(const Dense& a) {
  if (a.empty()) return 0;
  std::vector<std::vector<cpp_rational>> m(a.size(), std::vector<cpp_rational>(a[0].size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) m[i][j] = a[i][j];
  std::size_t rank = 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const cpp_rational f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

// Textbook Smith normal form over big integers: move the smallest nonzero
// entry to the pivot, reduce its row and column, repeat until it divides
// everything left.
inline std::vector<cpp_int> textbook_snf(const Dense& a) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::vector<std::vector<cpp_int>> m(rows, std::vector<cpp_int>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m[i][j] = a[i][j];
  std::vector<cpp_int> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (m[i][j] != 0 && (pi == rows || abs(m[i][j]) < abs(m[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi == rows) {
        diag.resize(std::min(rows, cols), 0);
        return diag;
      }
      std::swap(m[t], m[pi]);
      for (auto& row : m) std::swap(row[t], row[pj]);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        const cpp_int q = m[i][t] / m[t][t];
        for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        const cpp_int q = m[t][j] / m[t][t];
        for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m[i][j] % m[t][t] != 0) {
            for (std::size_t k = t; k < cols; ++k) m[t][k] += m[i][k];
            divides = false;
            break;
          }
      if (divides) break;
    }
    diag.push_back(abs(m[t][t]));
  }
  return diag;
}

inline cpp_int bareiss_det(std::vector<std::vector<cpp_int>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  cpp_int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t s = k + 1;
      while (s < n && m[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(m[s], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

// Invariant factors as ratios of determinantal divisors (gcd of all k x k
// minors). Exponential; only for tiny matrices.
inline std::vector<cpp_int> determinantal_snf(const Dense& a) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::vector<cpp_int> d{1};
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    cpp_int g = 0;
    std::vector<bool> rsel(rows, false), csel(cols, false);
    std::fill(rsel.begin(), rsel.begin() + static_cast<long>(k), true);
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.begin(), csel.begin() + static_cast<long>(k), true);
      do {
        std::vector<std::vector<cpp_int>> sub;
        for (std::size_t i = 0; i < rows; ++i) {
          if (!rsel[i]) continue;
          sub.emplace_back();
          for (std::size_t j = 0; j < cols; ++j)
            if (csel[j]) sub.back().push_back(a[i][j]);
        }
        g = gcd(g, abs(bareiss_det(sub)));
      } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
    d.push_back(g);
  }
  std::vector<cpp_int> out;
  for (std::size_t k = 1; k < d.size(); ++k) out.push_back(d[k] == 0 ? cpp_int(0) : d[k] / d[k - 1]);
  return out;
}

// Boundary matrices built straight from the sign rule, as dense arrays.
inline Dense dense_d1(const cocyclem::SimplicialComplex2& k) {
  Dense m(k.vertex_count(), std::vector<std::int64_t>(k.edges().size(), 0));
  for (std::size_t e = 0; e < k.edges().size(); ++e) {
    m[k.edges()[e][0]][e] -= 1;
    m[k.edges()[e][1]][e] += 1;
  }
  return m;
}

inline Dense dense_d2(const cocyclem::SimplicialComplex2& k) {
  std::map<cocyclem::Edge, std::size_t> idx;
  for (std::size_t e = 0; e < k.edges().size(); ++e) idx[k.edges()[e]] = e;
  Dense m(k.edges().size(), std::vector<std::int64_t>(k.triangles().size(), 0));
  for (std::size_t t = 0; t < k.triangles().size(); ++t) {
    const auto [a, b, c] = k.triangles()[t];
    m[idx.at({b, c})][t] += 1;
    m[idx.at({a, c})][t] -= 1;
    m[idx.at({a, b})][t] += 1;
  }
  return m;
}

inline Dense transpose(const Dense& a) {
  if (a.empty()) return {};
  Dense t(a[0].size(), std::vector<std::int64_t>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

struct Betti {
  std::size_t b0, b1, b2;
  std::vector<std::int64_t> torsion;  // invariant factors > 1 of d2
};

inline Betti betti(const cocyclem::SimplicialComplex2& k) {
  const auto d1 = dense_d1(k), d2 = dense_d2(k);
  const std::size_t r1 = k.edges().empty() ? 0 : rational_rank(d1);
  const std::size_t r2 = k.triangles().empty() ? 0 : rational_rank(d2);
  Betti b{k.vertex_count() - r1, k.edges().size() - r1 - r2, k.triangles().size() - r2, {}};
  if (!k.triangles().empty()) {
    for (const auto& x : textbook_snf(d2))
      if (x > 1) b.torsion.push_back(static_cast<std::int64_t>(x));
  }
  std::sort(b.torsion.begin(), b.torsion.end());
  return b;
}

// Random 2-complex on n vertices: random triangles, their faces, plus a few
// extra edges.
inline cocyclem::SimplicialComplex2 random_complex(std::mt19937_64& rng, std::size_t max_vertices = 8) {
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_vertices)(rng);
  std::bernoulli_distribution tri(std::uniform_real_distribution<double>(0.05, 0.6)(rng));
  std::bernoulli_distribution extra(0.2);
  std::set<cocyclem::Edge> edges;
  std::vector<cocyclem::Triangle> triangles;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      if (extra(rng)) edges.insert({a, b});
      for (std::size_t c = b + 1; c < n; ++c)
        if (tri(rng)) {
          triangles.push_back({a, b, c});
          edges.insert({a, b});
          edges.insert({b, c});
          edges.insert({a, c});
        }
    }
  return cocyclem::SimplicialComplex2(n, {edges.begin(), edges.end()}, triangles);
}

inline cocyclem::SimplicialComplex2 closure(std::size_t n, const std::vector<cocyclem::Triangle>& triangles,
                                            std::vector<cocyclem::Edge> extra = {}) {
  std::set<cocyclem::Edge> edges(extra.begin(), extra.end());
  std::vector<cocyclem::Triangle> sorted;
  for (auto t : triangles) {
    std::sort(t.begin(), t.end());
    sorted.push_back(t);
    edges.insert({t[0], t[1]});
    edges.insert({t[1], t[2]});
    edges.insert({t[0], t[2]});
  }
  std::sort(sorted.begin(), sorted.end());
  return cocyclem::SimplicialComplex2(n, {edges.begin(), edges.end()}, sorted);
}

inline cocyclem::SimplicialComplex2 tetrahedron_boundary() {
  return closure(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

// Two tetrahedron boundaries glued at vertex 0.
inline cocyclem::SimplicialComplex2 two_spheres() {
  return closure(7, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}, {0, 4, 5}, {0, 4, 6}, {0, 5, 6}, {4, 5, 6}});
}

// Octahedron boundary: a second, larger triangulation of the 2-sphere.
inline cocyclem::SimplicialComplex2 octahedron() {
  return closure(6, {{0, 2, 4}, {0, 2, 5}, {0, 3, 4}, {0, 3, 5}, {1, 2, 4}, {1, 2, 5}, {1, 3, 4}, {1, 3, 5}});
}

// Minimal six-vertex real projective plane; H1 = Z/2.
inline cocyclem::SimplicialComplex2 projective_plane() {
  return closure(6, {{0, 1, 3}, {0, 1, 4}, {0, 2, 3}, {0, 2, 5}, {0, 4, 5},
                     {1, 2, 4}, {1, 2, 5}, {1, 3, 5}, {2, 3, 4}, {3, 4, 5}});
}

// Every simple cycle (as a vertex sequence) of an undirected graph.
inline std::vector<std::vector<std::size_t>> simple_cycles(std::size_t n, const std::vector<cocyclem::Edge>& edges) {
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (const auto& [a, b] : edges) adj[a][b] = adj[b][a] = true;
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> path;
  std::vector<bool> used(n, false);
  // Cycles rooted at their smallest vertex, second vertex < last vertex.
  std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t root, std::size_t v) {
    for (std::size_t w = root; w < n; ++w) {
      if (!adj[v][w]) continue;
      if (w == root && path.size() >= 3 && path[1] < path.back()) out.push_back(path);
      if (w > root && !used[w]) {
        used[w] = true;
        path.push_back(w);
        dfs(root, w);
        path.pop_back();
        used[w] = false;
      }
    }
  };
  for (std::size_t r = 0; r < n; ++r) {
    path = {r};
    used.assign(n, false);
    used[r] = true;
    dfs(r, r);
  }
  return out;
}

// A positive cochain is a coboundary iff the log-product around every
// simple cycle vanishes.
inline bool positive_coboundary_by_cycles(const cocyclem::PositiveCochain& g, double tol) {
  std::vector<cocyclem::Edge> edges;
  for (const auto& e : g.entries()) edges.push_back({e.i, e.j});
  for (const auto& cyc : simple_cycles(g.size(), edges)) {
    double s = 0;
    for (std::size_t k = 0; k < cyc.size(); ++k) s += std::log(g.value(cyc[k], cyc[(k + 1) % cyc.size()]));
    if (std::abs(s) > tol) return false;
  }
  return true;
}

inline double wrap(double x) {
  double y = std::fmod(x + M_PI, 2 * M_PI);
  if (y <= 0) y += 2 * M_PI;
  return y - M_PI;
}

}  // namespace oracle
