#pragma once

// Builders shared by the module sources.

#include <deque>

#include "klrfold/modcat.hpp"

namespace klrfold::detail {

/// Unordered basis with generator columns; gens are y_0..y_{m-1},
/// tau_0..tau_{m-2}, sigma.
struct RawModule {
  int n = 1, m = 0;
  std::vector<int> parts;
  int trunc = -1;
  std::vector<std::string> seq;
  std::vector<int> deg;
  std::vector<std::vector<SVec>> gens;

  RawModule(int n_, int m_, std::vector<int> parts_);
  int gen_count() const;
  int add_basis(const std::string& s, int d);
};

Module finalize(RawModule&& raw);
RawModule to_raw(const Module& mod);
const linalg::Sparse& gen_matrix(const Module& mod, int g);
int sigma_gen(const Module& mod);
SVec sigma_power(const Module& mod, SVec v, int r);
std::string apply_aut(const DiagramAut& a, const std::string& s);
/// pi with pi.i = a(i) on a sorted orbit sequence i.
Perm rotation(const DiagramAut& a, const std::string& i);

/// Graded, sigma-stable subspace kept blockwise in reduced echelon form.
class BlockSpan {
 public:
  explicit BlockSpan(const Module& mod, bool with_sigma = true);
  bool insert(int b, linalg::Vec v);
  void reduce(int b, linalg::Vec& v) const;
  linalg::Vec local(int b, const SVec& v) const;
  SVec global(int b, const linalg::Vec& v) const;
  /// Insert seeds and close under all generators and sigma.
  void add_and_close(const std::vector<SVec>& seeds, const std::vector<int>& whole);
  void close();
  linalg::Vec coords(int b, const linalg::Vec& v) const;
  int size() const { return total_; }
  const std::vector<linalg::Vec>& rows(int b) const { return rows_[b]; }
  Module as_module() const;
  Module complement_quotient() const;

 private:
  void close_from(std::deque<std::pair<int, size_t>>& queue);
  const Module* mod_;
  std::vector<std::vector<linalg::Vec>> rows_;
  std::vector<std::vector<int>> piv_;
  int total_ = 0;
  bool with_sigma_ = true;
};

}  // namespace klrfold::detail
