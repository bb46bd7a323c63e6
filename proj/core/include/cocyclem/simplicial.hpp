#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "cocyclem/integer_matrix.hpp"
#include "cocyclem/smith.hpp"

namespace cocyclem {

using Edge = std::array<std::size_t, 2>;
using Triangle = std::array<std::size_t, 3>;

/// Oriented simplicial complex of dimension at most two. Simplices are stored
/// with strictly increasing vertex indices and every orientation sign in the
/// boundary maps derives from that order.
class SimplicialComplex2 {
 public:
  SimplicialComplex2() = default;
  /// Throws ValidationError unless the input is a valid downward-closed
  /// complex without duplicates.
  SimplicialComplex2(std::size_t vertex_count, std::vector<Edge> edges, std::vector<Triangle> triangles);

  std::size_t vertex_count() const { return vertex_count_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }

  /// Index of edge {i, j} in edges(), in either vertex order.
  std::optional<std::size_t> edge_index(std::size_t i, std::size_t j) const;

  /// Edge indices of (i,j), (j,k), (i,k) for triangle t.
  std::array<std::size_t, 3> triangle_edges(std::size_t t) const;

  /// For each edge, the triangles containing it (ascending).
  std::vector<std::vector<std::size_t>> edge_cofaces() const;

  friend bool operator==(const SimplicialComplex2& a, const SimplicialComplex2& b) {
    return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_ && a.triangles_ == b.triangles_;
  }

 private:
  static std::uint64_t key(std::size_t i, std::size_t j) { return (static_cast<std::uint64_t>(i) << 32) | j; }

  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<Triangle> triangles_;
  std::unordered_map<std::uint64_t, std::size_t> edge_lookup_;
};

struct HomologyProfile {
  std::array<std::size_t, 3> betti{};
  std::vector<std::int64_t> torsion_h1;
  /// Integral basis of ker(boundary_2), one vector of triangle
  /// coefficients per generator.
  std::vector<std::vector<std::int64_t>> h2_generators;
};

struct CohomologyH2 {
  std::size_t rank = 0;
  std::vector<std::int64_t> torsion;
};

/// Boundary map of dimension 1 or 2.
/// d1: vertices x edges, column (i,j) = -e_i + e_j.
/// d2: edges x triangles, column (i,j,k) = (j,k) - (i,k) + (i,j).
IntegerMatrix boundary_matrix(const SimplicialComplex2& k, int dimension);

HomologyProfile homology(const SimplicialComplex2& k);

/// H^2 from the cochain complex: Smith form of the transposed d2.
CohomologyH2 cohomology_h2(const SimplicialComplex2& k);

/// Brings a 2-cycle basis into a form where each generator owns a pivot
/// triangle with coefficient +1 that every other generator avoids. Uses
/// unimodular steps only, so the span is unchanged. Generators without an
/// available +-1 coefficient are left as they are.
std::vector<std::vector<std::int64_t>> canonical_cycle_basis(std::vector<std::vector<std::int64_t>> basis);

}  // namespace cocyclem
