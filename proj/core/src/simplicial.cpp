#include "cocyclem/simplicial.hpp"

#include <algorithm>
#include <string>

#include "cocyclem/checked.hpp"
#include "cocyclem/errors.hpp"

namespace cocyclem {

SimplicialComplex2::SimplicialComplex2(std::size_t vertex_count, std::vector<Edge> edges,
                                       std::vector<Triangle> triangles)
    : vertex_count_(vertex_count), edges_(std::move(edges)), triangles_(std::move(triangles)) {
  if (vertex_count_ == 0) throw ValidationError("complex needs at least one vertex");
  edge_lookup_.reserve(edges_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto [i, j] = edges_[e];
    if (!(i < j) || j >= vertex_count_) {
      throw ValidationError("edge (" + std::to_string(i) + "," + std::to_string(j) +
                            ") must satisfy i < j < vertex_count");
    }
    if (!edge_lookup_.emplace(key(i, j), e).second) {
      throw ValidationError("duplicate edge (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }
  std::vector<Triangle> seen = triangles_;
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) throw ValidationError("duplicate triangle");
  for (const auto& [i, j, k] : triangles_) {
    if (!(i < j && j < k) || k >= vertex_count_) throw ValidationError("triangle must satisfy i < j < k < vertex_count");
    if (!edge_lookup_.contains(key(i, j)) || !edge_lookup_.contains(key(j, k)) || !edge_lookup_.contains(key(i, k))) {
      throw ValidationError("triangle (" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) +
                            ") has a face missing from the edge list");
    }
  }
}

std::optional<std::size_t> SimplicialComplex2::edge_index(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  auto it = edge_lookup_.find(key(i, j));
  if (it == edge_lookup_.end()) return std::nullopt;
  return it->second;
}

std::array<std::size_t, 3> SimplicialComplex2::triangle_edges(std::size_t t) const {
  const auto& [i, j, k] = triangles_.at(t);
  return {edge_lookup_.at(key(i, j)), edge_lookup_.at(key(j, k)), edge_lookup_.at(key(i, k))};
}

std::vector<std::vector<std::size_t>> SimplicialComplex2::edge_cofaces() const {
  std::vector<std::vector<std::size_t>> out(edges_.size());
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    for (auto e : triangle_edges(t)) out[e].push_back(t);
  }
  return out;
}

IntegerMatrix boundary_matrix(const SimplicialComplex2& k, int dimension) {
  if (dimension == 1) {
    IntegerMatrix d(k.vertex_count(), k.edges().size());
    for (std::size_t e = 0; e < k.edges().size(); ++e) {
      d.set(k.edges()[e][0], e, -1);
      d.set(k.edges()[e][1], e, 1);
    }
    return d;
  }
  if (dimension == 2) {
    IntegerMatrix d(k.edges().size(), k.triangles().size());
    for (std::size_t t = 0; t < k.triangles().size(); ++t) {
      const auto [ij, jk, ik] = k.triangle_edges(t);
      d.set(jk, t, 1);
      d.set(ik, t, -1);
      d.set(ij, t, 1);
    }
    return d;
  }
  throw ValidationError("boundary_matrix supports dimensions 1 and 2 only");
}

std::vector<std::vector<std::int64_t>> canonical_cycle_basis(std::vector<std::vector<std::int64_t>> basis) {
  const std::size_t b = basis.size();
  if (b == 0) return basis;
  const std::size_t len = basis.front().size();
  std::vector<char> used(len, 0);
  std::vector<std::size_t> pivot(b, len);

  for (std::size_t s = 0; s < b; ++s) {
    std::size_t t = 0;
    while (t < len && (used[t] || (basis[s][t] != 1 && basis[s][t] != -1))) ++t;
    if (t == len) continue;
    if (basis[s][t] == -1) {
      for (auto& v : basis[s]) v = -v;
    }
    for (std::size_t r = 0; r < b; ++r) {
      if (r == s || basis[r][t] == 0) continue;
      const std::int64_t f = basis[r][t];
      for (std::size_t i = 0; i < len; ++i) basis[r][i] = checked::sub(basis[r][i], checked::mul(f, basis[s][i]));
    }
    used[t] = 1;
    pivot[s] = t;
  }

  std::vector<std::size_t> order(b);
  for (std::size_t s = 0; s < b; ++s) order[s] = s;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return pivot[x] < pivot[y]; });
  std::vector<std::vector<std::int64_t>> sorted;
  sorted.reserve(b);
  for (auto s : order) sorted.push_back(std::move(basis[s]));
  return sorted;
}

HomologyProfile homology(const SimplicialComplex2& k) {
  const IntegerMatrix d1 = boundary_matrix(k, 1);
  const IntegerMatrix d2 = boundary_matrix(k, 2);
  const SmithForm s1 = smith_normal_form(d1);
  const SmithForm s2 = smith_normal_form(d2);

  HomologyProfile h;
  h.betti[0] = k.vertex_count() - s1.rank;
  h.betti[1] = k.edges().size() - s1.rank - s2.rank;
  h.betti[2] = k.triangles().size() - s2.rank;
  h.torsion_h1 = s2.torsion();
  h.h2_generators = canonical_cycle_basis(integer_kernel_basis(d2));
  if (h.h2_generators.size() != h.betti[2]) {
    throw NumericError("kernel basis size disagrees with rank of boundary_2");
  }
  return h;
}

CohomologyH2 cohomology_h2(const SimplicialComplex2& k) {
  const IntegerMatrix coboundary = boundary_matrix(k, 2).transposed();
  const SmithForm s = smith_normal_form(coboundary);
  return {k.triangles().size() - s.rank, s.torsion()};
}

}  // namespace cocyclem
