#pragma once

// Cartan data, diagram automorphisms, folding, sequences and roots.

#include <string>
#include <vector>

namespace klrfold {

using Weight = std::vector<int>;  // multiplicities indexed by vertex
using Seq = std::vector<int>;     // sequence of vertex indices

/// Symmetric form i.j on ZI. Vertices are indexed 0..size()-1.
struct CartanDatum {
  std::vector<std::string> labels;
  std::vector<std::vector<int>> dot;

  int size() const { return static_cast<int>(labels.size()); }
  int d(int i) const { return dot[i][i] / 2; }
  /// c_ij = i.j / d_i
  int c(int i, int j) const { return dot[i][j] / d(i); }
  int pair(const Weight& a, const Weight& b) const;
  int index_of(const std::string& label) const;

  /// Simply-laced datum with i.i = 2 and i.j = -1 along the given edges.
  static CartanDatum simply_laced(const std::vector<std::string>& labels,
                                  const std::vector<std::pair<int, int>>& edges);
  static CartanDatum type_A(int rank);
  /// D4 with node 1 (label "2") at the centre.
  static CartanDatum type_D4();
};

struct DiagramAut {
  std::vector<int> perm;  // i -> a(i)
  int order() const;
  int operator()(int i) const { return perm[i]; }
  int inverse(int i) const;
  static DiagramAut identity(int n);
};

struct ValidationReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

ValidationReport validate(const CartanDatum& datum);
ValidationReport validate(const CartanDatum& datum, const DiagramAut& aut);

struct FoldedDatum {
  CartanDatum base;
  DiagramAut aut;
  /// Orbits as sorted vertex lists, ordered by their smallest element.
  std::vector<std::vector<int>> orbits;
  std::vector<int> orbit_of;
  /// Induced datum on J.
  CartanDatum folded;

  int n() const { return aut.order(); }
  /// Canonical a-stable lift of an NJ-weight to NI.
  Weight lift(const Weight& nu_j) const;
  /// NJ-weight of an a-stable NI-weight; throws DomainError otherwise.
  Weight descend(const Weight& nu_i) const;
};

FoldedDatum fold(const CartanDatum& datum, const DiagramAut& aut);

struct LoadedDatum {
  CartanDatum datum;
  DiagramAut aut;
};
/// Reads {"I": [...], "dot": [[...]], "aut": [...]}; aut may list labels or
/// zero-based indices. Missing aut means the identity.
LoadedDatum load_datum_json(const std::string& text);
LoadedDatum load_datum_file(const std::string& path);

inline constexpr int kDefaultSeqLimit = 12;

int height(const Weight& nu);
/// All sequences with content nu, lexicographically sorted.
std::vector<Seq> seq_enumerate(const Weight& nu, int limit = kDefaultSeqLimit);
Weight content(const Seq& s, int nverts);

struct Root {
  Weight alpha;
  int mult = 1;
};

/// Sylvester criterion on the symmetric form.
bool is_finite_type(const CartanDatum& datum);
/// Positive roots of height <= bound (finite type only).
std::vector<Root> positive_roots(const CartanDatum& datum, int height_bound);
/// Number of Kostant partitions of nu.
long graded_dim_f(const CartanDatum& datum, const Weight& nu);
/// All weights of the given height over size() vertices, lexicographically.
std::vector<Weight> weights_of_height(int nverts, int h);

std::string weight_str(const CartanDatum& datum, const Weight& nu);
std::string seq_str(const CartanDatum& datum, const Seq& s);

}  // namespace klrfold
