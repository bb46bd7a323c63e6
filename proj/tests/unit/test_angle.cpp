#include <gtest/gtest.h>

#include <cocyclem/angle.hpp>

#include <random>

using namespace cocyclem;

TEST(Angle, WrapSignedRange) {
  EXPECT_DOUBLE_EQ(wrap_signed(kPi), kPi);
  EXPECT_DOUBLE_EQ(wrap_signed(-kPi), kPi);
  EXPECT_DOUBLE_EQ(wrap_signed(3 * kPi), kPi);
  EXPECT_DOUBLE_EQ(wrap_signed(0.0), 0.0);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-100, 100);
  for (int k = 0; k < 1000; ++k) {
    const double x = u(rng), w = wrap_signed(x);
    EXPECT_GT(w, -kPi);
    EXPECT_LE(w, kPi);
    EXPECT_NEAR(std::remainder(x - w, kTwoPi), 0.0, 1e-12);
  }
}

TEST(Angle, WrapUnsignedRange) {
  EXPECT_DOUBLE_EQ(wrap_unsigned(-0.5), kTwoPi - 0.5);
  EXPECT_DOUBLE_EQ(wrap_unsigned(kTwoPi), 0.0);
  for (double x : {-7.0, -1e-18, 0.0, 3.0, 6.2831853, 100.0}) {
    const double w = wrap_unsigned(x);
    EXPECT_GE(w, 0.0);
    EXPECT_LT(w, kTwoPi);
  }
}

TEST(Rotation, InverseComposesToIdentity) {
  for (long s = 0; s < 64; ++s) {
    const auto r = Rotation::from_grid(s, 64);
    EXPECT_NEAR(wrap_signed((r * r.inverse()).angle()), 0.0, 1e-15);
    EXPECT_NEAR(r.angle(), kTwoPi * static_cast<double>(s) / 64.0, 1e-15);
  }
  EXPECT_EQ(Rotation::from_grid(-1, 8), Rotation::from_grid(7, 8));
  EXPECT_EQ(Rotation(), Rotation(0.0));
}
