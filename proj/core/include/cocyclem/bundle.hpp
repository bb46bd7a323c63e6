#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cocyclem/align.hpp"
#include "cocyclem/simplicial.hpp"

namespace cocyclem {

/// Sampled SO(2)-valued transition functions on a 2-complex.
///
/// Each edge (i, j) carries an anchor angle, the value of tau_ij at a base
/// point inside the edge. For every triangle t containing the edge there is
/// a path of W + 1 samples that starts at the anchor and follows tau_ij to
/// the barycenter of t. Paths are indexed paths()[t][slot] with slots
/// (i,j), (j,k), (i,k) for t = (i, j, k). Angles are stored wrapped to
/// (-pi, pi]; consecutive samples must differ by less than pi/2 so each
/// path lifts to the reals unambiguously.
class ContinuousCocycle {
 public:
  using TrianglePaths = std::array<std::vector<double>, 3>;

  /// Throws ValidationError on shape errors and NumericError when the
  /// continuity budget or the barycenter cocycle condition
  /// |wrap(end_ij + end_jk - end_ik)| <= cocycle_tol fails.
  ContinuousCocycle(SimplicialComplex2 complex, std::vector<double> anchors, std::vector<TrianglePaths> paths,
                    double cocycle_tol = 1e-6);

  const SimplicialComplex2& complex() const { return complex_; }
  const std::vector<double>& anchors() const { return anchors_; }
  const std::vector<TrianglePaths>& paths() const { return paths_; }
  /// W, the number of steps per path.
  std::size_t steps() const { return steps_; }
  double cocycle_tolerance() const { return cocycle_tol_; }

  /// Resamples every path to factor * W steps by linear interpolation of
  /// its lift.
  ContinuousCocycle refined(std::size_t factor) const;

  /// Multiplies by the constant coboundary phi_i - phi_j on edge (i, j).
  ContinuousCocycle with_coboundary(std::span<const double> phi) const;

 private:
  SimplicialComplex2 complex_;
  std::vector<double> anchors_;
  std::vector<TrianglePaths> paths_;
  std::size_t steps_ = 0;
  double cocycle_tol_ = 1e-6;
};

/// Integer 2-cochain of lifted angle defects, one entry per triangle.
struct EulerCochain {
  std::vector<std::int64_t> c;
};

/// One Euler number per H2 generator, in generator order.
using EulerVector = std::vector<std::int64_t>;

/// Lift of a wrapped path starting at the representative of its first sample.
std::vector<double> lift_path(std::span<const double> path);

/// c(t) = (L_ij + L_jk - L_ik) / 2pi for the lifted barycenter values.
/// Throws NumericError if any value is farther than `guard` from an integer.
EulerCochain euler_cochain(const ContinuousCocycle& z, double guard = 0.05);

/// Pairing of the Euler cochain with each integral H2 generator.
EulerVector euler_vector(const ContinuousCocycle& z, const HomologyProfile& h, double guard = 0.05);

/// Cocycle whose Euler vector is `m`: all paths constant zero except one
/// edge path on a pivot triangle of each generator, which winds m_s times.
/// Throws ValidationError if a generator has no +-1 triangle that the other
/// generators avoid, or if W is too small for the requested winding.
ContinuousCocycle make_bundle(const SimplicialComplex2& k, const HomologyProfile& h, std::span<const std::int64_t> m,
                              std::size_t steps);

/// Whether every path is constant within `tol`.
bool is_flat(const ContinuousCocycle& z, double tol = 1e-9);

/// Transition paths from per-radius alignments. `radial[e]` belongs to
/// edge e of `k`. The path runs from the identity at infinite radius
/// through the rings from outermost to innermost, with the shortest arc
/// between consecutive rings, resampled to `steps` steps (0 picks
/// 4 * n_r). Anchors are all zero.
ContinuousCocycle from_radial_alignments(const SimplicialComplex2& k, std::span<const RadialAlignment> radial,
                                         std::size_t steps = 0, double cocycle_tol = 1e-6);

}  // namespace cocyclem
