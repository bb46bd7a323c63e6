#include <gtest/gtest.h>

#include <cocyclem/align.hpp>
#include <cocyclem/errors.hpp>

#include <cmath>
#include <random>

using namespace cocyclem;

namespace {

PolarImage random_image(std::mt19937_64& rng, const PolarGrid& g) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> v(g.n_r * g.n_theta);
  for (auto& x : v) x = n(rng);
  return PolarImage(g, v);
}

// Direct evaluation of the discretized objective, no FFT or profile reuse.
double brute_objective(const PolarImage& a, const PolarImage& b, long shift) {
  const auto& g = a.grid();
  const long n = static_cast<long>(g.n_theta);
  double s = 0;
  for (std::size_t p = 0; p < g.n_r; ++p)
    for (long q = 0; q < n; ++q) {
      const double d = a.at(p, static_cast<std::size_t>(((q - shift) % n + n) % n)) - b.at(p, static_cast<std::size_t>(q));
      s += d * d * g.radius(p);
    }
  return s * g.ring_spacing() * kTwoPi / static_cast<double>(n);
}

}  // namespace

TEST(Align, IdenticalImages) {
  std::mt19937_64 rng(1);
  const auto a = random_image(rng, PolarGrid{});
  const auto r = distance_and_align(a, a);
  EXPECT_EQ(r.g, Rotation());
  EXPECT_EQ(r.distance, 0.0);
}

TEST(Align, RecoversGridShift) {
  std::mt19937_64 rng(2);
  const PolarGrid g{};
  const auto a = random_image(rng, g);
  for (long k = 0; k < 64; ++k) {
    const auto r = distance_and_align(a, a.shifted(k));
    EXPECT_NEAR(r.g.angle(), kTwoPi * k / 64.0, 1e-12) << k;
    EXPECT_LT(r.distance, 1e-9);
    EXPECT_FALSE(r.ambiguous);
  }
}

TEST(Align, MinimizesBruteForceObjective) {
  std::mt19937_64 rng(3);
  const PolarGrid g{6, 24, 3.0};
  for (int c = 0; c < 20; ++c) {
    const auto a = random_image(rng, g), b = random_image(rng, g);
    double best = INFINITY;
    long best_k = 0;
    for (long k = 0; k < 24; ++k) {
      const double v = brute_objective(a, b, k);
      EXPECT_NEAR(alignment_objective(a, b, k), v, 1e-9 * (1 + v));
      if (v < best) {
        best = v;
        best_k = k;
      }
    }
    const auto r = distance_and_align(a, b);
    EXPECT_EQ(r.shift, best_k);
    EXPECT_NEAR(r.distance, std::sqrt(best), 1e-9);
  }
}

TEST(Align, RadiallySymmetricImageIsAmbiguous) {
  const PolarGrid g{};
  std::vector<double> v(g.n_r * g.n_theta);
  for (std::size_t p = 0; p < g.n_r; ++p)
    for (std::size_t q = 0; q < g.n_theta; ++q) v[p * g.n_theta + q] = std::exp(-g.radius(p));
  const PolarImage a(g, v);
  for (long k = 0; k < 64; k += 7) EXPECT_EQ(alignment_objective(a, a, k), 0.0);
  // Distinct but both radial: every shift ties.
  std::vector<double> w = v;
  for (auto& x : w) x *= 1.5;
  const auto r = distance_and_align(a, PolarImage(g, w));
  EXPECT_TRUE(r.ambiguous);
}

TEST(Align, GridMismatchRejected) {
  std::mt19937_64 rng(4);
  EXPECT_THROW(distance_and_align(random_image(rng, PolarGrid{}), random_image(rng, PolarGrid{8, 64, 6.0})),
               ValidationError);
}

TEST(Pairwise, ReciprocityAndSymmetry) {
  std::mt19937_64 rng(5);
  ImageStack s;
  s.grid = PolarGrid{8, 32, 4.0};
  s.images.push_back(random_image(rng, s.grid));
  s.images.push_back(s.images[0].shifted(5));
  s.images.push_back(s.images[0]);
  for (int k = 0; k < 3; ++k) s.images.push_back(random_image(rng, s.grid));
  const auto d = pairwise_comparisons(s, {}, 3);
  for (std::size_t i = 0; i < s.images.size(); ++i) {
    EXPECT_EQ(d.distance(i, i), 0.0);
    for (std::size_t j = 0; j < s.images.size(); ++j) {
      EXPECT_EQ(d.distance(i, j), d.distance(j, i));
      EXPECT_EQ(d.rotation(j, i), d.rotation(i, j).inverse());
    }
  }
  EXPECT_EQ(d.distance(0, 2), 0.0);
  EXPECT_EQ(d.rotation(0, 2), Rotation());
  EXPECT_NEAR(d.rotation(0, 1).angle(), kTwoPi * 5 / 32, 1e-14);
  EXPECT_NEAR(d.rotation(1, 0).angle(), kTwoPi * 27 / 32, 1e-14);
  const auto serial = pairwise_comparisons(s, {}, 1);
  EXPECT_EQ(serial.distance_matrix(), d.distance_matrix());
}

TEST(Pairwise, SwappedArgumentsBitIdentical) {
  std::mt19937_64 rng(6);
  const PolarGrid g{};
  for (int c = 0; c < 10; ++c) {
    const auto a = random_image(rng, g), b = random_image(rng, g);
    const auto ab = distance_and_align(a, b), ba = distance_and_align(b, a);
    EXPECT_EQ(ab.distance, ba.distance);
    EXPECT_EQ(ab.shift, (64 - ba.shift) % 64);
    EXPECT_EQ(ab.g, Rotation::from_grid(ab.shift, 64));
    EXPECT_EQ(ba.g, Rotation::from_grid(ba.shift, 64));
  }
}

TEST(Radial, ShiftedCopyIsConstantPerRing) {
  const auto m = default_molecule();
  const PolarGrid g{};
  const auto f = sample_uniform_directions(1, 2)[0].frame;
  const auto a = project(m, f, g);
  for (long k : {0L, 3L, 40L}) {
    const auto r = radial_align(a, a.shifted(k), 1e-4);
    const auto global = distance_and_align(a, a.shifted(k)).g;
    ASSERT_GT(r.r_index, 0u);
    for (std::size_t p = 0; p < g.n_r; ++p) {
      if (p < r.r_index && r.valid[p]) {
        EXPECT_EQ(r.per_ring[p], Rotation::from_grid(k, 64));
        EXPECT_EQ(r.per_ring[p], global);
      } else {
        EXPECT_EQ(r.per_ring[p], Rotation());
      }
    }
  }
}

TEST(Radial, TailBeyondSupportIsIdentity) {
  // Compact blob near the centre; outer rings carry (numerically) nothing.
  const Molecule m({{1.0, {0.3, 0.1, 0.0}, 0.4}, {0.5, {-0.2, 0.4, 0.1}, 0.3}});
  const PolarGrid g{16, 64, 8.0};
  const auto a = project(m, sample_uniform_directions(1, 9)[0].frame, g);
  const auto r = radial_align(a, a.shifted(9), 1e-6);
  EXPECT_LT(r.r_index, g.n_r);
  for (std::size_t p = r.r_index; p < g.n_r; ++p) {
    EXPECT_FALSE(r.valid[p]);
    EXPECT_EQ(r.per_ring[p], Rotation());
  }
}

TEST(Radial, SingleEnergeticRing) {
  const PolarGrid g{8, 32, 4.0};
  std::vector<double> v(g.n_r * g.n_theta, 0.0);
  for (std::size_t q = 0; q < g.n_theta; ++q) v[2 * g.n_theta + q] = std::cos(2 * M_PI * q / 32.0) + 0.3 * std::sin(6 * M_PI * q / 32.0);
  const PolarImage a(g, v);
  const auto r = radial_align(a, a.shifted(7), 1e-3);
  EXPECT_EQ(r.per_ring[2], Rotation::from_grid(7, 32));
  for (std::size_t p = 0; p < g.n_r; ++p) {
    EXPECT_EQ(r.valid[p], p == 2);
    if (p != 2) {
      EXPECT_EQ(r.per_ring[p], Rotation());
    }
  }
  EXPECT_EQ(r.r_index, 3u);
}
