#include "cocyclem/smith.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "cocyclem/checked.hpp"

namespace cocyclem {
namespace {

using Column = std::vector<MatrixEntry>;

// a + k*b, sorted, no zeros.
Column axpy_column(const Column& a, std::int64_t k, const Column& b) {
  Column out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].row < b[j].row)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].row < a[i].row) {
      out.push_back({b[j].row, checked::mul(k, b[j].value)});
      ++j;
    } else {
      const auto v = checked::axpy(a[i].value, k, b[j].value);
      if (v != 0) out.push_back({a[i].row, v});
      ++i;
      ++j;
    }
  }
  return out;
}

// x*a + y*b
Column combine_columns(std::int64_t x, const Column& a, std::int64_t y, const Column& b) {
  Column scaled;
  scaled.reserve(a.size());
  if (x != 0) {
    for (const auto& e : a) scaled.push_back({e.row, checked::mul(x, e.value)});
  }
  return axpy_column(scaled, y, b);
}

// g = x*a + y*b with g = gcd(a, b) > 0.
std::int64_t extended_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::int64_t tmp = checked::sub(old_r, checked::mul(q, r));
    old_r = r;
    r = tmp;
    tmp = checked::sub(old_s, checked::mul(q, s));
    old_s = s;
    s = tmp;
    tmp = checked::sub(old_t, checked::mul(q, t));
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  x = old_s;
  y = old_t;
  return old_r;
}

// Column echelon form H = M V with distinct lowest rows ("lows") among the
// nonzero columns of H.
struct ColumnEchelon {
  std::vector<Column> columns;
  std::vector<Column> transform;  // columns of V, empty unless tracked
  std::unordered_map<std::size_t, std::size_t> pivot_of_row;
};

ColumnEchelon column_echelon(const IntegerMatrix& m, bool track_transform) {
  ColumnEchelon h;
  const std::size_t n = m.cols();
  h.columns.resize(n);
  if (track_transform) h.transform.resize(n);
  for (std::size_t c = 0; c < n; ++c) {
    const auto col = m.column(c);
    h.columns[c].assign(col.begin(), col.end());
    if (track_transform) h.transform[c] = {{c, 1}};
  }

  for (std::size_t c = 0; c < n; ++c) {
    while (!h.columns[c].empty()) {
      const MatrixEntry low = h.columns[c].back();
      auto it = h.pivot_of_row.find(low.row);
      if (it == h.pivot_of_row.end()) {
        h.pivot_of_row.emplace(low.row, c);
        break;
      }
      const std::size_t p = it->second;
      const std::int64_t a = h.columns[p].back().value;
      const std::int64_t b = low.value;
      if (b % a == 0) {
        const std::int64_t q = -(b / a);
        h.columns[c] = axpy_column(h.columns[c], q, h.columns[p]);
        if (track_transform) h.transform[c] = axpy_column(h.transform[c], q, h.transform[p]);
        continue;
      }
      std::int64_t x = 0, y = 0;
      const std::int64_t g = extended_gcd(a, b, x, y);
      const std::int64_t ag = a / g, bg = b / g;
      Column new_pivot = combine_columns(x, h.columns[p], y, h.columns[c]);
      Column cleared = combine_columns(-bg, h.columns[p], ag, h.columns[c]);
      h.columns[p] = std::move(new_pivot);
      h.columns[c] = std::move(cleared);
      if (track_transform) {
        Column vp = combine_columns(x, h.transform[p], y, h.transform[c]);
        Column vc = combine_columns(-bg, h.transform[p], ag, h.transform[c]);
        h.transform[p] = std::move(vp);
        h.transform[c] = std::move(vc);
      }
    }
  }
  return h;
}

bool is_unit(std::int64_t v) { return v == 1 || v == -1; }

}  // namespace

std::vector<std::int64_t> SmithForm::torsion() const {
  std::vector<std::int64_t> out;
  for (auto d : diagonal) {
    if (d > 1) out.push_back(d);
  }
  return out;
}

SmithForm dense_smith_normal_form(std::vector<std::vector<std::int64_t>> a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a.front().size();
  const std::size_t diag_len = std::min(rows, cols);
  SmithForm out;
  out.diagonal.assign(diag_len, 0);

  for (std::size_t t = 0; t < diag_len; ++t) {
    for (;;) {
      // Smallest nonzero magnitude in the trailing block becomes the pivot.
      std::int64_t best = std::numeric_limits<std::int64_t>::max();
      std::size_t bi = rows, bj = cols;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (a[i][j] != 0 && checked::abs(a[i][j]) < best) {
            best = checked::abs(a[i][j]);
            bi = i;
            bj = j;
          }
        }
      }
      if (bi == rows) {
        out.rank = t;
        return out;
      }
      std::swap(a[t], a[bi]);
      for (auto& row : a) std::swap(row[t], row[bj]);

      const std::int64_t pivot = a[t][t];
      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        const std::int64_t q = a[i][t] / pivot;
        for (std::size_t j = t; j < cols; ++j) a[i][j] = checked::sub(a[i][j], checked::mul(q, a[t][j]));
        dirty = dirty || a[i][t] != 0;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        const std::int64_t q = a[t][j] / pivot;
        for (std::size_t i = t; i < rows; ++i) a[i][j] = checked::sub(a[i][j], checked::mul(q, a[i][t]));
        dirty = dirty || a[t][j] != 0;
      }
      if (dirty) continue;

      // Enforce the divisibility chain: fold an offending row into row t.
      std::size_t offender = rows;
      for (std::size_t i = t + 1; i < rows && offender == rows; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a[i][j] % pivot != 0) {
            offender = i;
            break;
          }
        }
      }
      if (offender == rows) break;
      for (std::size_t j = t; j < cols; ++j) a[t][j] = checked::add(a[t][j], a[offender][j]);
    }
    out.diagonal[t] = checked::abs(a[t][t]);
  }
  out.rank = diag_len;
  return out;
}

namespace {

SmithForm sparse_smith_normal_form(const IntegerMatrix& m) {
  ColumnEchelon h = column_echelon(m, false);

  // Columns whose pivot is a unit split off as 1s on the diagonal once their
  // pivot rows are cleared from the remaining columns.
  std::vector<std::size_t> unit_cols, hard_cols;
  for (std::size_t c = 0; c < h.columns.size(); ++c) {
    if (h.columns[c].empty()) continue;
    (is_unit(h.columns[c].back().value) ? unit_cols : hard_cols).push_back(c);
  }

  std::vector<char> unit_row(m.rows(), 0);
  for (auto c : unit_cols) unit_row[h.columns[c].back().row] = 1;

  std::vector<Column> remainder;
  remainder.reserve(hard_cols.size());
  for (auto c : hard_cols) {
    Column col = h.columns[c];
    // Clear unit pivot rows from the bottom up; eliminating row r only
    // touches rows strictly above r.
    std::size_t ceiling = m.rows();
    for (;;) {
      auto it = std::find_if(col.rbegin(), col.rend(),
                             [&](const MatrixEntry& e) { return e.row < ceiling && unit_row[e.row]; });
      if (it == col.rend()) break;
      const std::size_t row = it->row;
      const std::size_t p = h.pivot_of_row.at(row);
      const std::int64_t q = -checked::mul(it->value, h.columns[p].back().value);
      col = axpy_column(col, q, h.columns[p]);
      ceiling = row;
    }
    remainder.push_back(std::move(col));
  }

  std::vector<std::size_t> touched;
  for (const auto& col : remainder) {
    for (const auto& e : col) touched.push_back(e.row);
  }
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());

  std::vector<std::vector<std::int64_t>> dense(touched.size(), std::vector<std::int64_t>(remainder.size(), 0));
  for (std::size_t c = 0; c < remainder.size(); ++c) {
    for (const auto& e : remainder[c]) {
      const auto r = static_cast<std::size_t>(std::lower_bound(touched.begin(), touched.end(), e.row) - touched.begin());
      dense[r][c] = e.value;
    }
  }
  const SmithForm tail = dense_smith_normal_form(std::move(dense));

  SmithForm out;
  out.diagonal.assign(std::min(m.rows(), m.cols()), 0);
  std::size_t k = 0;
  for (std::size_t i = 0; i < unit_cols.size(); ++i) out.diagonal[k++] = 1;
  for (std::size_t i = 0; i < tail.rank; ++i) out.diagonal[k++] = tail.diagonal[i];
  out.rank = k;
  return out;
}

}  // namespace

SmithForm smith_normal_form(const IntegerMatrix& m) {
  try {
    return sparse_smith_normal_form(m);
  } catch (const OverflowError&) {
    // Echelon coefficients can grow where min-pivot elimination stays small.
    constexpr std::size_t kDenseLimit = 1u << 24;
    if (m.rows() * m.cols() > kDenseLimit) throw;
    return dense_smith_normal_form(m.to_dense());
  }
}

std::vector<std::vector<std::int64_t>> integer_kernel_basis(const IntegerMatrix& m) {
  const ColumnEchelon h = column_echelon(m, true);
  std::vector<std::vector<std::int64_t>> basis;
  for (std::size_t c = 0; c < h.columns.size(); ++c) {
    if (!h.columns[c].empty()) continue;
    std::vector<std::int64_t> v(m.cols(), 0);
    for (const auto& e : h.transform[c]) v[e.row] = e.value;
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace cocyclem
