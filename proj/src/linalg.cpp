#include "klrfold/linalg.hpp"

#include <algorithm>
#include <map>

#include "klrfold/errors.hpp"

namespace klrfold::linalg {

Dense Dense::identity(int n) {
  Dense d(n, n);
  for (int i = 0; i < n; ++i) d(i, i) = 1;
  return d;
}

void Sparse::push_column(const std::vector<std::pair<std::uint32_t, u64>>& entries) {
  std::map<std::uint32_t, u64> acc;
  for (auto [r, v] : entries) {
    if (static_cast<int>(r) >= rows) throw DomainError("sparse row index out of range");
    u64& slot = acc[r];
    slot = Fp::add(slot, v);
  }
  for (auto [r, v] : acc)
    if (v) {
      row.push_back(r);
      val.push_back(v);
    }
  colptr.push_back(static_cast<std::uint32_t>(val.size()));
  ++cols;
}

Dense Sparse::to_dense() const {
  Dense d(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (auto k = colptr[c]; k < colptr[c + 1]; ++k) d(row[k], c) = val[k];
  return d;
}

Sparse Sparse::from_dense(const Dense& d) {
  Sparse s;
  s.rows = d.rows;
  for (int c = 0; c < d.cols; ++c) {
    std::vector<std::pair<std::uint32_t, u64>> e;
    for (int r = 0; r < d.rows; ++r)
      if (d(r, c)) e.emplace_back(r, d(r, c));
    s.push_column(e);
  }
  return s;
}

Sparse Sparse::transpose() const {
  Sparse t;
  t.rows = cols;
  t.cols = rows;
  std::vector<std::uint32_t> count(rows + 1, 0);
  for (auto r : row) ++count[r + 1];
  for (int r = 0; r < rows; ++r) count[r + 1] += count[r];
  t.colptr = count;
  t.row.resize(val.size());
  t.val.resize(val.size());
  std::vector<std::uint32_t> next(count.begin(), count.end() - 1);
  for (int c = 0; c < cols; ++c)
    for (auto k = colptr[c]; k < colptr[c + 1]; ++k) {
      auto pos = next[row[k]]++;
      t.row[pos] = static_cast<std::uint32_t>(c);
      t.val[pos] = val[k];
    }
  return t;
}

namespace {

void eliminate_rows(Dense& m, int prow, int pcol, Exec e) {
  const int rows = m.rows, cols = m.cols;
  const u64* pr = &m.a[static_cast<size_t>(prow) * cols];
  auto body = [&](int r) {
    if (r == prow) return;
    u64* rr = &m.a[static_cast<size_t>(r) * cols];
    u64 f = rr[pcol];
    if (!f) return;
    for (int c = pcol; c < cols; ++c)
      if (pr[c]) rr[c] = Fp::sub(rr[c], Fp::mul(f, pr[c]));
  };
  if (e == Exec::parallel) {
#pragma omp parallel for schedule(static) if (rows > 64)
    for (int r = 0; r < rows; ++r) body(r);
  } else {
    for (int r = 0; r < rows; ++r) body(r);
  }
}

}  // namespace

std::vector<int> rref(Dense& m, Exec e) {
  std::vector<int> pivots;
  int prow = 0;
  for (int c = 0; c < m.cols && prow < m.rows; ++c) {
    int found = -1;
    for (int r = prow; r < m.rows; ++r)
      if (m(r, c)) {
        found = r;
        break;
      }
    if (found < 0) continue;
    if (found != prow)
      std::swap_ranges(m.a.begin() + static_cast<long>(found) * m.cols, m.a.begin() + static_cast<long>(found + 1) * m.cols,
                       m.a.begin() + static_cast<long>(prow) * m.cols);
    u64 inv = Fp::inv(m(prow, c));
    for (int cc = c; cc < m.cols; ++cc) m(prow, cc) = Fp::mul(m(prow, cc), inv);
    eliminate_rows(m, prow, c, e);
    pivots.push_back(c);
    ++prow;
  }
  return pivots;
}

int rank(Dense m, Exec e) { return static_cast<int>(rref(m, e).size()); }

Dense nullspace(const Dense& m, Exec e) {
  Dense r = m;
  std::vector<int> piv = rref(r, e);
  std::vector<char> is_piv(m.cols, 0);
  for (int c : piv) is_piv[c] = 1;
  Dense out(m.cols - static_cast<int>(piv.size()), m.cols);
  int k = 0;
  for (int f = 0; f < m.cols; ++f) {
    if (is_piv[f]) continue;
    out(k, f) = 1;
    for (size_t i = 0; i < piv.size(); ++i) out(k, piv[i]) = Fp::neg(r(static_cast<int>(i), f));
    ++k;
  }
  return out;
}

Dense multiply(const Dense& x, const Dense& y, Exec e) {
  if (x.cols != y.rows) throw DomainError("dense multiply shape mismatch");
  Dense z(x.rows, y.cols);
  auto body = [&](int i) {
    for (int k = 0; k < x.cols; ++k) {
      u64 f = x(i, k);
      if (!f) continue;
      for (int j = 0; j < y.cols; ++j)
        if (y(k, j)) z(i, j) = Fp::add(z(i, j), Fp::mul(f, y(k, j)));
    }
  };
  if (e == Exec::parallel) {
#pragma omp parallel for schedule(static) if (x.rows > 32)
    for (int i = 0; i < x.rows; ++i) body(i);
  } else {
    for (int i = 0; i < x.rows; ++i) body(i);
  }
  return z;
}

Dense inverse(const Dense& m, Exec e) {
  if (m.rows != m.cols) throw DomainError("inverse of a non-square matrix");
  int n = m.rows;
  Dense aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  std::vector<int> piv = rref(aug, e);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) throw NotInvertibleError("singular matrix");
  Dense inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

u64 trace(const Dense& m) {
  u64 t = 0;
  for (int i = 0; i < std::min(m.rows, m.cols); ++i) t = Fp::add(t, m(i, i));
  return t;
}

Vec apply(const Sparse& s, const Vec& v, Exec e) {
  if (static_cast<int>(v.size()) != s.cols) throw DomainError("sparse apply shape mismatch");
  Vec out(s.rows, 0);
  if (e == Exec::parallel) {
    // Row-parallel via the transpose avoids write conflicts.
    Sparse t = s.transpose();
#pragma omp parallel for schedule(dynamic, 256) if (s.rows > 1024)
    for (int r = 0; r < t.cols; ++r) {
      u64 acc = 0;
      for (auto k = t.colptr[r]; k < t.colptr[r + 1]; ++k) acc = Fp::add(acc, Fp::mul(t.val[k], v[t.row[k]]));
      out[r] = acc;
    }
  } else {
    for (int c = 0; c < s.cols; ++c) {
      if (!v[c]) continue;
      for (auto k = s.colptr[c]; k < s.colptr[c + 1]; ++k) out[s.row[k]] = Fp::add(out[s.row[k]], Fp::mul(s.val[k], v[c]));
    }
  }
  return out;
}

Sparse multiply(const Sparse& x, const Sparse& y) {
  if (x.cols != y.rows) throw DomainError("sparse multiply shape mismatch");
  Sparse z;
  z.rows = x.rows;
  std::vector<std::pair<std::uint32_t, u64>> col;
  for (int c = 0; c < y.cols; ++c) {
    col.clear();
    for (auto k = y.colptr[c]; k < y.colptr[c + 1]; ++k) {
      auto mid = y.row[k];
      for (auto l = x.colptr[mid]; l < x.colptr[mid + 1]; ++l) col.emplace_back(x.row[l], Fp::mul(x.val[l], y.val[k]));
    }
    z.push_column(col);
  }
  return z;
}

}  // namespace klrfold::linalg
