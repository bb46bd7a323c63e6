#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cocyclem {

/// Positive-real edge values g_ij on pieces 0..n-1, stored for i < j with
/// g_ji = 1 / g_ij and g_ii = 1 implied.
class PositiveCochain {
 public:
  struct Entry {
    std::size_t i = 0;
    std::size_t j = 0;
    double g = 1.0;

    friend bool operator==(const Entry&, const Entry&) = default;
  };

  /// Entries given with i > j are flipped and inverted. Throws
  /// ValidationError on nonpositive values, duplicates, or loops.
  PositiveCochain(std::size_t n, std::vector<Entry> entries);

  std::size_t size() const { return n_; }
  const std::vector<Entry>& entries() const { return entries_; }
  /// g_ij in either order; throws if the pair is not stored.
  double value(std::size_t i, std::size_t j) const;

 private:
  std::size_t n_ = 0;
  std::vector<Entry> entries_;
};

/// Distances from the viewer to the centers of the two glued ends: d_ij on
/// piece i, d_ji on piece j.
struct EndDistances {
  std::size_t i = 0;
  std::size_t j = 0;
  double d_ij = 1.0;
  double d_ji = 1.0;
};

/// Cross ratios g_ij = d_ij / d_ji.
PositiveCochain from_distances(std::size_t n, std::span<const EndDistances> d);

/// Sliding piece i along the viewing direction by factor s_i:
/// g'_ij = g_ij * s_j / s_i.
PositiveCochain rescale(const PositiveCochain& g, std::span<const double> s);

struct PositiveCoboundaryTest {
  bool is_coboundary = false;
  /// Realizing scales with g_ij = s_i / s_j (when consistent), s = 1 at
  /// the smallest piece of each connected component.
  std::vector<double> s;
  std::vector<std::size_t> witness;
  double max_log_violation = 0.0;
};

/// Log-domain spanning-tree test; `tol` applies to log residuals.
PositiveCoboundaryTest is_coboundary_positive(const PositiveCochain& g, double tol = 1e-9);

/// Three bars, two pairs of ends glued, the third pair visibly apart.
std::vector<EndDistances> tribar_distances();
/// Four bars in a cycle, three glued ends, the fourth apart.
std::vector<EndDistances> escher_brick_distances();

}  // namespace cocyclem
