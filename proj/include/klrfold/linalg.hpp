#pragma once

// Dense and sparse linear algebra over the prime field Fp. Every kernel has
// a serial reference and an OpenMP variant selected by Exec.

#include <cstdint>
#include <vector>

#include "klrfold/fp.hpp"

namespace klrfold::linalg {

using u64 = std::uint64_t;
using Vec = std::vector<u64>;

enum class Exec { serial, parallel };

struct Dense {
  int rows = 0, cols = 0;
  std::vector<u64> a;  // row-major
  Dense() = default;
  Dense(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}
  u64& operator()(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  u64 operator()(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
  static Dense identity(int n);
  friend bool operator==(const Dense&, const Dense&) = default;
};

/// Column-compressed sparse matrix; column c holds the image of basis vector c.
struct Sparse {
  int rows = 0, cols = 0;
  std::vector<std::uint32_t> colptr{0};
  std::vector<std::uint32_t> row;
  std::vector<u64> val;

  /// Append the next column (entries need not be sorted; zeros are dropped).
  void push_column(const std::vector<std::pair<std::uint32_t, u64>>& entries);
  Dense to_dense() const;
  static Sparse from_dense(const Dense& d);
  Sparse transpose() const;
  size_t nnz() const { return val.size(); }
};

/// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(Dense& m, Exec e = Exec::parallel);
int rank(Dense m, Exec e = Exec::parallel);
/// Basis of the right kernel {x : m x = 0}, one vector per row.
Dense nullspace(const Dense& m, Exec e = Exec::parallel);
Dense multiply(const Dense& x, const Dense& y, Exec e = Exec::parallel);
/// Inverse of a square matrix; throws NotInvertibleError.
Dense inverse(const Dense& m, Exec e = Exec::parallel);
u64 trace(const Dense& m);

Vec apply(const Sparse& s, const Vec& v, Exec e = Exec::parallel);
Sparse multiply(const Sparse& x, const Sparse& y);

}  // namespace klrfold::linalg
