#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cocyclem/simplicial.hpp"

namespace cocyclem {

/// Additive group the edge values live in.
enum class PotentialGroup { Real, Circle };

struct PotentialResult {
  bool consistent = true;
  /// Vertex potentials p with value(i, j) = p_i - p_j on tree edges; the
  /// smallest vertex of every connected component has p = 0.
  std::vector<double> potential;
  /// Closed cycle of vertices (last connects back to first) whose edge
  /// values do not sum to zero; empty when consistent.
  std::vector<std::size_t> witness;
  /// Largest |residual| over non-tree edges.
  double max_violation = 0.0;
};

/// Breadth-first spanning forest, then a check of every non-tree edge.
/// `values[e]` belongs to `edges[e]` = (i, j) with i < j.
PotentialResult solve_potential(std::size_t n, std::span<const Edge> edges, std::span<const double> values,
                                PotentialGroup group, double tol);

/// Rotates and reflects a cycle so the smallest vertex leads, followed by
/// its smaller neighbour.
std::vector<std::size_t> canonical_cycle(std::vector<std::size_t> cycle);

/// Connected component label per vertex, labels in order of smallest vertex.
std::vector<std::size_t> connected_components(std::size_t n, std::span<const Edge> edges);

}  // namespace cocyclem
