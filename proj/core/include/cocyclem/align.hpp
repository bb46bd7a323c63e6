#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "cocyclem/angle.hpp"
#include "cocyclem/phantom.hpp"

namespace cocyclem {

struct AlignOptions {
  /// Relative correlation margin below which a match counts as a tie.
  double tie_tolerance = 1e-6;
  /// Quadratic interpolation of the correlation peak for sub-grid angles.
  bool refine = false;
};

struct AlignmentResult {
  Rotation g;
  long shift = 0;  // grid shift realizing the minimum
  double distance = 0.0;
  double ambiguity_gap = 0.0;
  bool ambiguous = false;
};

/// Per-radius minimizers h(r_p). Rings with index >= r_index and masked
/// rings hold the identity.
struct RadialAlignment {
  std::vector<Rotation> per_ring;
  std::vector<bool> valid;
  std::size_t r_index = 0;
};

/// Weighted squared L2 norm with polar measure r dr dtheta.
double weighted_norm_sq(const PolarImage& psi);

/// ||g psi_i - psi_j||^2 for the rotation by `shift` grid steps.
double alignment_objective(const PolarImage& psi_i, const PolarImage& psi_j, long shift);

/// Single-ring objective: dtheta * sum_q |psi_i[p][q - shift] - psi_j[p][q]|^2.
double ring_objective(const PolarImage& psi_i, const PolarImage& psi_j, std::size_t ring, long shift);

/// Weighted circular cross-correlation <g_s psi_i, psi_j> for every shift s,
/// evaluated directly.
std::vector<double> correlation_profile(const PolarImage& psi_i, const PolarImage& psi_j);

/// Rotation g minimizing ||g psi_i - psi_j|| and the minimal distance.
/// Swapping the arguments yields the inverse rotation and a bit-identical
/// distance.
AlignmentResult distance_and_align(const PolarImage& psi_i, const PolarImage& psi_j, const AlignOptions& opts = {});

RadialAlignment radial_align(const PolarImage& psi_i, const PolarImage& psi_j, double energy_floor);

/// All-pairs distances and rotations with g_ii = 1 and g_ji = g_ij^-1.
class PairwiseComparisons {
 public:
  PairwiseComparisons() = default;
  explicit PairwiseComparisons(std::size_t n);

  std::size_t size() const { return n_; }
  double distance(std::size_t i, std::size_t j) const { return distance_[i * n_ + j]; }
  const Rotation& rotation(std::size_t i, std::size_t j) const { return rotation_[i * n_ + j]; }
  double gap(std::size_t i, std::size_t j) const { return gap_[i * n_ + j]; }
  const std::vector<double>& distance_matrix() const { return distance_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& ambiguous_pairs() const { return ambiguous_; }

  /// Stores the (i, j) result and its mirror; requires i < j.
  void set(std::size_t i, std::size_t j, const AlignmentResult& r);

 private:
  std::size_t n_ = 0;
  std::vector<double> distance_;
  std::vector<Rotation> rotation_;
  std::vector<double> gap_;
  std::vector<std::pair<std::size_t, std::size_t>> ambiguous_;
};

PairwiseComparisons pairwise_comparisons(const ImageStack& stack, const AlignOptions& opts = {},
                                         std::size_t threads = 1);

}  // namespace cocyclem
