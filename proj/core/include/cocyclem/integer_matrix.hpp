#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cocyclem {

struct MatrixEntry {
  std::size_t row;
  std::int64_t value;
  friend bool operator==(const MatrixEntry&, const MatrixEntry&) = default;
};

/// Sparse integer matrix stored column by column. Entries within a column
/// are kept sorted by row and never hold explicit zeros.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols);

  static IntegerMatrix from_dense(const std::vector<std::vector<std::int64_t>>& rows);
  static IntegerMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_.size(); }
  std::size_t nonzeros() const;

  std::int64_t at(std::size_t row, std::size_t col) const;
  void set(std::size_t row, std::size_t col, std::int64_t value);
  std::span<const MatrixEntry> column(std::size_t col) const { return cols_.at(col); }

  IntegerMatrix transposed() const;
  bool is_zero() const { return nonzeros() == 0; }

  /// Product with overflow checking.
  IntegerMatrix operator*(const IntegerMatrix& rhs) const;
  std::vector<std::int64_t> apply(std::span<const std::int64_t> x) const;

  std::vector<std::vector<std::int64_t>> to_dense() const;

  friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::vector<std::vector<MatrixEntry>> cols_;
};

}  // namespace cocyclem
