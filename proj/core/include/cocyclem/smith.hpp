#pragma once

#include <cstdint>
#include <vector>

#include "cocyclem/integer_matrix.hpp"

namespace cocyclem {

/// Invariant factors of an integer matrix. `diagonal` has min(rows, cols)
/// entries forming a divisibility chain d1 | d2 | ... with the zeros last.
struct SmithForm {
  std::vector<std::int64_t> diagonal;
  std::size_t rank = 0;

  /// Invariant factors strictly greater than one.
  std::vector<std::int64_t> torsion() const;
};

/// All arithmetic is overflow-checked; OverflowError is thrown rather than
/// returning a wrong diagonal.
SmithForm smith_normal_form(const IntegerMatrix& m);

/// Integral basis of {x in Z^cols : m x = 0}. Because the basis comes from
/// unimodular column operations it spans the whole integer kernel, not
/// just a finite-index sublattice.
std::vector<std::vector<std::int64_t>> integer_kernel_basis(const IntegerMatrix& m);

/// Dense Smith normal form with minimal-absolute-value pivoting. Exposed for
/// testing; smith_normal_form only uses it on the part of the matrix that
/// sparse unit-pivot elimination cannot clear.
SmithForm dense_smith_normal_form(std::vector<std::vector<std::int64_t>> a);

}  // namespace cocyclem
