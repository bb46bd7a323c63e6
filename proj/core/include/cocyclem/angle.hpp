#pragma once

#include <numbers>

namespace cocyclem {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Representative of `x` modulo 2*pi in (-pi, pi].
double wrap_signed(double x);

/// Representative of `x` modulo 2*pi in [0, 2*pi).
double wrap_unsigned(double x);

/// Element of SO(2), stored as an angle in (-pi, pi] so that the inverse
/// is an exact negation.
class Rotation {
 public:
  constexpr Rotation() = default;
  explicit Rotation(double radians) : angle_(wrap_signed(radians)) {}

  static constexpr Rotation identity() { return Rotation{}; }
  /// Rotation by 2*pi*steps/n_theta; from_grid(-k, n) == from_grid(k, n).inverse().
  static Rotation from_grid(long steps, long n_theta);

  /// Same element in [0, 2*pi).
  double angle() const { return wrap_unsigned(angle_); }
  double signed_angle() const { return angle_; }

  Rotation inverse() const;
  Rotation compose(const Rotation& other) const { return Rotation(angle_ + other.angle_); }
  Rotation operator*(const Rotation& other) const { return compose(other); }

  friend bool operator==(const Rotation&, const Rotation&) = default;

 private:
  double angle_ = 0.0;
};

}  // namespace cocyclem
