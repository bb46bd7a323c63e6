#include "cocyclem/integer_matrix.hpp"

#include <algorithm>
#include <map>

#include "cocyclem/checked.hpp"
#include "cocyclem/errors.hpp"

namespace cocyclem {

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

IntegerMatrix IntegerMatrix::from_dense(const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t n_rows = rows.size();
  const std::size_t n_cols = n_rows == 0 ? 0 : rows.front().size();
  IntegerMatrix m(n_rows, n_cols);
  for (std::size_t r = 0; r < n_rows; ++r) {
    if (rows[r].size() != n_cols) throw ValidationError("ragged dense matrix");
    for (std::size_t c = 0; c < n_cols; ++c) {
      if (rows[r][c] != 0) m.cols_[c].push_back({r, rows[r][c]});
    }
  }
  return m;
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.cols_[i].push_back({i, 1});
  return m;
}

std::size_t IntegerMatrix::nonzeros() const {
  std::size_t total = 0;
  for (const auto& col : cols_) total += col.size();
  return total;
}

std::int64_t IntegerMatrix::at(std::size_t row, std::size_t col) const {
  if (row >= rows_) throw ValidationError("row index out of range");
  const auto& entries = cols_.at(col);
  auto it = std::lower_bound(entries.begin(), entries.end(), row,
                             [](const MatrixEntry& e, std::size_t r) { return e.row < r; });
  return (it != entries.end() && it->row == row) ? it->value : 0;
}

void IntegerMatrix::set(std::size_t row, std::size_t col, std::int64_t value) {
  if (row >= rows_) throw ValidationError("row index out of range");
  auto& entries = cols_.at(col);
  auto it = std::lower_bound(entries.begin(), entries.end(), row,
                             [](const MatrixEntry& e, std::size_t r) { return e.row < r; });
  if (it != entries.end() && it->row == row) {
    if (value == 0) {
      entries.erase(it);
    } else {
      it->value = value;
    }
  } else if (value != 0) {
    entries.insert(it, {row, value});
  }
}

IntegerMatrix IntegerMatrix::transposed() const {
  IntegerMatrix t(cols(), rows_);
  for (std::size_t c = 0; c < cols(); ++c) {
    for (const auto& e : cols_[c]) t.cols_[e.row].push_back({c, e.value});
  }
  return t;
}

IntegerMatrix IntegerMatrix::operator*(const IntegerMatrix& rhs) const {
  if (cols() != rhs.rows()) throw ValidationError("matrix product shape mismatch");
  IntegerMatrix out(rows_, rhs.cols());
  for (std::size_t c = 0; c < rhs.cols(); ++c) {
    std::map<std::size_t, std::int64_t> acc;
    for (const auto& k : rhs.cols_[c]) {
      for (const auto& e : cols_[k.row]) {
        acc[e.row] = checked::axpy(acc[e.row], k.value, e.value);
      }
    }
    for (const auto& [row, value] : acc) {
      if (value != 0) out.cols_[c].push_back({row, value});
    }
  }
  return out;
}

std::vector<std::int64_t> IntegerMatrix::apply(std::span<const std::int64_t> x) const {
  if (x.size() != cols()) throw ValidationError("matrix-vector shape mismatch");
  std::vector<std::int64_t> y(rows_, 0);
  for (std::size_t c = 0; c < cols(); ++c) {
    if (x[c] == 0) continue;
    for (const auto& e : cols_[c]) y[e.row] = checked::axpy(y[e.row], x[c], e.value);
  }
  return y;
}

std::vector<std::vector<std::int64_t>> IntegerMatrix::to_dense() const {
  std::vector<std::vector<std::int64_t>> d(rows_, std::vector<std::int64_t>(cols(), 0));
  for (std::size_t c = 0; c < cols(); ++c) {
    for (const auto& e : cols_[c]) d[e.row][c] = e.value;
  }
  return d;
}

}  // namespace cocyclem
