#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cocyclem/align.hpp"
#include "cocyclem/simplicial.hpp"

namespace cocyclem {

/// Edge-indexed SO(2) values on a complex. theta()[e] is the angle of
/// g_ij for edges()[e] = (i, j), i < j, wrapped to (-pi, pi]; g_ji is the
/// inverse by construction.
class DiscreteCocycle {
 public:
  DiscreteCocycle(SimplicialComplex2 complex, std::vector<double> theta);

  const SimplicialComplex2& complex() const { return complex_; }
  const std::vector<double>& theta() const { return theta_; }
  /// Angle of g_ij for either vertex order.
  double theta(std::size_t i, std::size_t j) const;

 private:
  SimplicialComplex2 complex_;
  std::vector<double> theta_;
};

struct ResidualReport {
  double delta = 0.0;
  std::vector<double> delta_i;
  /// delta_i / (3 delta); empty when delta == 0.
  std::optional<std::vector<double>> rho_i;
  /// wrap(theta_ij + theta_jk + theta_ki) per triangle, in (-pi, pi].
  std::vector<double> per_triangle;
};

struct CoboundaryTest {
  bool is_coboundary = false;
  /// Vertex angles with theta_ij = wrap(phi_i - phi_j) on a spanning forest.
  std::vector<double> phi;
  std::vector<std::size_t> witness;
  double max_violation = 0.0;
};

enum class SyncMethod { SpanningTree, Spectral };

struct SyncOptions {
  SyncMethod method = SyncMethod::Spectral;
  bool degree_normalized = false;
  std::size_t max_iterations = 200000;
  double tolerance = 1e-13;
};

struct Synchronization {
  std::vector<double> phi;
  SyncMethod method = SyncMethod::Spectral;
  /// sum over edges of wrap(theta_ij - (phi_i - phi_j))^2
  double residual_after = 0.0;
  std::size_t iterations = 0;
};

/// Restriction of the pairwise rotations to the edges of `k`.
DiscreteCocycle extract_cocycle(const PairwiseComparisons& d, const SimplicialComplex2& k);

ResidualReport residuals(const DiscreteCocycle& z);

/// theta'_ij = wrap(theta_ij + phi_i - phi_j).
DiscreteCocycle apply_coboundary(const DiscreteCocycle& z, std::span<const double> phi);

CoboundaryTest is_coboundary(const DiscreteCocycle& z, double tol = 1e-9);

/// Fitted residual sum over edges for given vertex angles.
double coboundary_residual(const DiscreteCocycle& z, std::span<const double> phi);

/// Vertex angles from the edge values, gauge-fixed to zero at the smallest
/// vertex of every connected component. Throws NumericError if the power
/// iteration does not converge.
Synchronization synchronize(const DiscreteCocycle& z, const SyncOptions& opts = {});

const char* to_string(SyncMethod m);

}  // namespace cocyclem
