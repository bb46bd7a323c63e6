#include "cocyclem/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <thread>

#include "cocyclem/angle.hpp"
#include "cocyclem/errors.hpp"

namespace cocyclem {
namespace {

double dot(const Vec3& x, const Vec3& y) { return x[0] * y[0] + x[1] * y[1] + x[2] * y[2]; }

Vec3 cross(const Vec3& x, const Vec3& y) {
  return {x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]};
}

Vec3 normalized(const Vec3& v) {
  const double n = std::sqrt(dot(v, v));
  return {v[0] / n, v[1] / n, v[2] / n};
}

Vec3 random_direction(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  for (;;) {
    Vec3 v{normal(rng), normal(rng), normal(rng)};
    if (dot(v, v) > 1e-24) return normalized(v);
  }
}

}  // namespace

Molecule::Molecule(std::vector<GaussianComponent> components) : components_(std::move(components)) {
  if (components_.empty()) throw ValidationError("molecule needs at least one component");
  for (const auto& c : components_) {
    if (!(c.width > 0.0) || !std::isfinite(c.width)) throw ValidationError("component width must be positive");
    if (!std::isfinite(c.weight)) throw ValidationError("component weight must be finite");
    for (double x : c.center) {
      if (!std::isfinite(x)) throw ValidationError("component center must be finite");
    }
  }
}

double Molecule::support_radius() const {
  double r = 0.0;
  for (const auto& c : components_) r = std::max(r, std::sqrt(dot(c.center, c.center)) + 4.0 * c.width);
  return r;
}

Molecule Molecule::operator+(const Molecule& other) const {
  auto all = components_;
  all.insert(all.end(), other.components_.begin(), other.components_.end());
  return Molecule(std::move(all));
}

Molecule default_molecule() {
  return Molecule({
      {1.0, {0.0, 0.0, 0.0}, 0.55},
      {0.8, {0.9, 0.2, -0.3}, 0.35},
      {0.6, {-0.4, 0.85, 0.25}, 0.3},
      {0.5, {0.1, -0.6, 0.7}, 0.25},
  });
}

void Frame::validate(double tol) const {
  auto near = [tol](double x, double y) { return std::abs(x - y) <= tol; };
  if (!near(dot(a, a), 1.0) || !near(dot(b, b), 1.0) || !near(dot(c, c), 1.0)) {
    throw ValidationError("frame vectors must be unit length");
  }
  if (!near(dot(a, b), 0.0) || !near(dot(a, c), 0.0) || !near(dot(b, c), 0.0)) {
    throw ValidationError("frame vectors must be orthogonal");
  }
  if (!near(dot(cross(a, b), c), 1.0)) throw ValidationError("frame must be right-handed");
}

Frame frame_from_direction(const Vec3& direction, double in_plane_angle) {
  const Vec3 c = normalized(direction);
  std::size_t axis = 0;
  for (std::size_t k = 1; k < 3; ++k) {
    if (std::abs(c[k]) < std::abs(c[axis])) axis = k;
  }
  Vec3 e{};
  e[axis] = 1.0;
  const double proj = dot(e, c);
  const Vec3 a0 = normalized({e[0] - proj * c[0], e[1] - proj * c[1], e[2] - proj * c[2]});
  const Vec3 b0 = cross(c, a0);

  const double cs = std::cos(in_plane_angle), sn = std::sin(in_plane_angle);
  Frame f;
  for (std::size_t k = 0; k < 3; ++k) {
    f.a[k] = cs * a0[k] - sn * b0[k];
    f.b[k] = sn * a0[k] + cs * b0[k];
  }
  f.c = c;
  return f;
}

void PolarGrid::validate() const {
  if (n_r == 0) throw ValidationError("grid needs at least one ring");
  if (n_theta < 8 || n_theta % 2 != 0) throw ValidationError("n_theta must be even and at least 8");
  if (!(r_max > 0.0) || !std::isfinite(r_max)) throw ValidationError("r_max must be positive");
}

double PolarGrid::angle(std::size_t q) const {
  return kTwoPi * static_cast<double>(q) / static_cast<double>(n_theta);
}

PolarImage::PolarImage(PolarGrid grid, std::vector<double> samples) : grid_(grid), samples_(std::move(samples)) {
  grid_.validate();
  if (samples_.size() != grid_.n_r * grid_.n_theta) throw ValidationError("sample count does not match grid");
  for (double s : samples_) {
    if (!std::isfinite(s)) throw ValidationError("image samples must be finite");
  }
}

PolarImage PolarImage::shifted(long k) const {
  const long n = static_cast<long>(grid_.n_theta);
  const long kk = ((k % n) + n) % n;
  std::vector<double> out(samples_.size());
  for (std::size_t p = 0; p < grid_.n_r; ++p) {
    for (long q = 0; q < n; ++q) {
      out[p * grid_.n_theta + static_cast<std::size_t>((q + kk) % n)] = samples_[p * grid_.n_theta + static_cast<std::size_t>(q)];
    }
  }
  return PolarImage(grid_, std::move(out));
}

void ImageStack::validate() const {
  grid.validate();
  for (const auto& im : images) {
    if (!(im.grid() == grid)) throw ValidationError("all images in a stack must share one grid");
  }
  if (!ground_truth.empty() && ground_truth.size() != images.size()) {
    throw ValidationError("ground truth must have one entry per image");
  }
}

double ImageStack::rms() const {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& im : images) {
    for (double s : im.samples()) sum += s * s;
    count += im.samples().size();
  }
  return count == 0 ? 0.0 : std::sqrt(sum / static_cast<double>(count));
}

std::vector<GroundTruth> sample_uniform_directions(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ValidationError("need at least one direction");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::vector<GroundTruth> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 c = random_direction(rng);
    const double alpha = angle(rng);
    out.push_back({frame_from_direction(c, alpha), alpha, i});
  }
  return out;
}

std::vector<GroundTruth> clustered_directions(std::size_t k_clusters, std::size_t per_cluster, std::uint64_t seed,
                                              std::optional<std::size_t> angle_grid) {
  if (k_clusters == 0 || per_cluster == 0) throw ValidationError("cluster counts must be at least one");
  if (angle_grid && *angle_grid == 0) throw ValidationError("angle grid must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::vector<GroundTruth> out;
  out.reserve(k_clusters * per_cluster);
  for (std::size_t k = 0; k < k_clusters; ++k) {
    const Vec3 c = random_direction(rng);
    for (std::size_t i = 0; i < per_cluster; ++i) {
      double alpha = 0.0;
      if (angle_grid) {
        std::uniform_int_distribution<std::size_t> step(0, *angle_grid - 1);
        alpha = kTwoPi * static_cast<double>(step(rng)) / static_cast<double>(*angle_grid);
      } else {
        alpha = angle(rng);
      }
      out.push_back({frame_from_direction(c, alpha), alpha, k});
    }
  }
  return out;
}

PolarImage project(const Molecule& m, const Frame& f, const PolarGrid& grid) {
  grid.validate();
  std::vector<double> cos_t(grid.n_theta), sin_t(grid.n_theta);
  for (std::size_t q = 0; q < grid.n_theta; ++q) {
    cos_t[q] = std::cos(grid.angle(q));
    sin_t[q] = std::sin(grid.angle(q));
  }
  const double root_two_pi = std::sqrt(kTwoPi);
  std::vector<double> samples(grid.n_r * grid.n_theta, 0.0);
  for (const auto& comp : m.components()) {
    const double ca = dot(comp.center, f.a);
    const double cb = dot(comp.center, f.b);
    const double amplitude = comp.weight * comp.width * root_two_pi;
    const double inv = 1.0 / (2.0 * comp.width * comp.width);
    for (std::size_t p = 0; p < grid.n_r; ++p) {
      const double r = grid.radius(p);
      for (std::size_t q = 0; q < grid.n_theta; ++q) {
        const double dx = r * cos_t[q] - ca;
        const double dy = r * sin_t[q] - cb;
        samples[p * grid.n_theta + q] += amplitude * std::exp(-(dx * dx + dy * dy) * inv);
      }
    }
  }
  return PolarImage(grid, std::move(samples));
}

ImageStack project_stack(const Molecule& m, std::vector<GroundTruth> truth, const PolarGrid& grid,
                         std::size_t threads) {
  ImageStack stack;
  stack.grid = grid;
  stack.images.resize(truth.size());
  const std::size_t workers = std::max<std::size_t>(1, std::min(threads, truth.size()));
  auto work = [&](std::size_t w) {
    for (std::size_t i = w; i < truth.size(); i += workers) stack.images[i] = project(m, truth[i].frame, grid);
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  stack.ground_truth = std::move(truth);
  return stack;
}

ImageStack add_noise(const ImageStack& stack, const NoiseSpec& spec) {
  if (!(spec.pixel_sigma >= 0.0)) throw ValidationError("pixel_sigma must be nonnegative");
  if (spec.pixel_sigma == 0.0) return stack;
  const double sigma = spec.pixel_sigma * stack.rms();
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> noise(0.0, sigma);
  ImageStack out;
  out.grid = stack.grid;
  out.ground_truth = stack.ground_truth;
  out.images.reserve(stack.images.size());
  for (const auto& im : stack.images) {
    auto samples = im.samples();
    for (auto& s : samples) s += noise(rng);
    out.images.emplace_back(im.grid(), std::move(samples));
  }
  return out;
}

}  // namespace cocyclem
