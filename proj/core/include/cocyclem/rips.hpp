#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cocyclem/simplicial.hpp"

namespace cocyclem {

/// Graph joining i < j whenever d(i, j) <= epsilon.
struct EpsilonGraph {
  std::size_t n = 0;
  double epsilon = 0.0;
  std::vector<Edge> edges;  // lexicographic
};

struct SweepRecord {
  double epsilon = 0.0;
  std::size_t edge_count = 0;
  std::size_t triangle_count = 0;
  HomologyProfile homology;
};

/// `distances` is row-major n x n; it must be symmetric with a zero diagonal
/// and nonnegative entries.
EpsilonGraph build_graph(std::span<const double> distances, std::size_t n, double epsilon);

/// Vertices and edges of the graph plus one triangle per 3-clique. Larger
/// cliques add no higher simplices.
SimplicialComplex2 clique_complex(const EpsilonGraph& g);

/// One record per epsilon; `epsilons` must be ascending.
std::vector<SweepRecord> epsilon_sweep(std::span<const double> distances, std::size_t n,
                                       std::span<const double> epsilons);

/// `steps` evenly spaced values from `lo` to `hi` inclusive.
std::vector<double> linear_epsilons(double lo, double hi, std::size_t steps);

/// Distinct off-diagonal distances, ascending; the candidate thresholds at
/// which the complex changes.
std::vector<double> distinct_distances(std::span<const double> distances, std::size_t n);

}  // namespace cocyclem
