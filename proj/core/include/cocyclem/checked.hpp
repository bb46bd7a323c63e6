#pragma once

#include <cstdint>

#include "cocyclem/errors.hpp"

namespace cocyclem::checked {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
  return r;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
  return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
  return r;
}

// a + k*b
inline std::int64_t axpy(std::int64_t a, std::int64_t k, std::int64_t b) { return add(a, mul(k, b)); }

inline std::int64_t abs(std::int64_t a) {
  if (a == INT64_MIN) throw OverflowError("integer overflow in abs");
  return a < 0 ? -a : a;
}

}  // namespace cocyclem::checked
