#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace cocyclem {

using Vec3 = std::array<double, 3>;

/// One isotropic Gaussian blob of the potential.
struct GaussianComponent {
  double weight = 1.0;
  Vec3 center{};
  double width = 1.0;

  friend bool operator==(const GaussianComponent&, const GaussianComponent&) = default;
};

/// Potential of a synthetic molecule as an isotropic Gaussian mixture.
class Molecule {
 public:
  explicit Molecule(std::vector<GaussianComponent> components);

  const std::vector<GaussianComponent>& components() const { return components_; }
  /// max(|center| + 4 width) over components.
  double support_radius() const;

  /// Concatenation of mixtures, so the potential is the sum.
  Molecule operator+(const Molecule& other) const;

 private:
  std::vector<GaussianComponent> components_;
};

/// Asymmetric four-blob molecule used by the fixtures and the pipeline
/// default: non-collinear centers with distinct widths.
Molecule default_molecule();

/// Right-handed orthonormal frame [a b c]; c is the viewing direction.
struct Frame {
  Vec3 a{1, 0, 0};
  Vec3 b{0, 1, 0};
  Vec3 c{0, 0, 1};

  /// Throws ValidationError if the frame is not in SO(3) within `tol`.
  void validate(double tol = 1e-12) const;
};

/// Deterministic completion of a unit viewing direction to a frame, then
/// an in-plane rotation by `in_plane_angle`. Rotating by 2*pi*k/n_theta
/// shifts the projected polar image by k samples along theta.
Frame frame_from_direction(const Vec3& direction, double in_plane_angle);

struct PolarGrid {
  std::size_t n_r = 16;
  std::size_t n_theta = 64;
  double r_max = 6.0;

  void validate() const;
  double radius(std::size_t ring) const { return (static_cast<double>(ring) + 0.5) * r_max / static_cast<double>(n_r); }
  double angle(std::size_t q) const;
  double ring_spacing() const { return r_max / static_cast<double>(n_r); }
  friend bool operator==(const PolarGrid&, const PolarGrid&) = default;
};

/// samples[p * n_theta + q] is the image at radius r_p and angle theta_q.
class PolarImage {
 public:
  PolarImage() = default;
  PolarImage(PolarGrid grid, std::vector<double> samples);

  const PolarGrid& grid() const { return grid_; }
  double at(std::size_t ring, std::size_t q) const { return samples_[ring * grid_.n_theta + q]; }
  const std::vector<double>& samples() const { return samples_; }

  /// Rotation of the image by 2*pi*k/n_theta: result[q] = this[q - k].
  PolarImage shifted(long k) const;

  friend bool operator==(const PolarImage&, const PolarImage&) = default;

 private:
  PolarGrid grid_;
  std::vector<double> samples_;
};

struct GroundTruth {
  Frame frame;
  double in_plane_angle = 0.0;
  std::size_t cluster = 0;
};

struct ImageStack {
  PolarGrid grid;
  std::vector<PolarImage> images;
  std::vector<GroundTruth> ground_truth;  // empty or one per image

  void validate() const;
  /// Root mean square over all samples of all images.
  double rms() const;
};

struct NoiseSpec {
  double pixel_sigma = 0.0;
  std::uint64_t seed = 0;
};

/// Viewing directions i.i.d. uniform on the sphere with uniform in-plane
/// angles, deterministic in `seed`.
std::vector<GroundTruth> sample_uniform_directions(std::size_t n, std::uint64_t seed);

/// `k_clusters` uniform directions, `per_cluster` frames sharing each one.
/// With `angle_grid` set, in-plane angles are multiples of 2*pi/angle_grid.
std::vector<GroundTruth> clustered_directions(std::size_t k_clusters, std::size_t per_cluster, std::uint64_t seed,
                                              std::optional<std::size_t> angle_grid = std::nullopt);

/// Closed-form line integral of the mixture along c, sampled on the grid.
PolarImage project(const Molecule& m, const Frame& f, const PolarGrid& grid);

/// Projects every ground-truth frame; parallel across images when
/// `threads` > 1 with identical results.
ImageStack project_stack(const Molecule& m, std::vector<GroundTruth> truth, const PolarGrid& grid,
                         std::size_t threads = 1);

/// Adds N(0, (pixel_sigma * rms)^2) to every sample.
ImageStack add_noise(const ImageStack& stack, const NoiseSpec& spec);

}  // namespace cocyclem
