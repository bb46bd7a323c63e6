#include "cocyclem/angle.hpp"

#include <cmath>

#include "cocyclem/errors.hpp"

namespace cocyclem {

double wrap_signed(double x) {
  double r = std::remainder(x, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

double wrap_unsigned(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

Rotation Rotation::from_grid(long steps, long n_theta) {
  if (n_theta <= 0) throw ValidationError("grid rotation needs n_theta > 0");
  // Centred step count in (-n/2, n/2]; negating it negates the angle exactly.
  long k = steps % n_theta;
  if (2 * k > n_theta) k -= n_theta;
  if (2 * k <= -n_theta) k += n_theta;
  Rotation r;
  r.angle_ = 2 * k == n_theta ? kPi : kTwoPi * static_cast<double>(k) / static_cast<double>(n_theta);
  return r;
}

Rotation Rotation::inverse() const {
  Rotation r;
  r.angle_ = angle_ == kPi ? kPi : -angle_;
  return r;
}

}  // namespace cocyclem
