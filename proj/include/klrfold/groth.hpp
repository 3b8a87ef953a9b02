#pragma once

// Grothendieck groups K(P) and K(L) of the folded categories: the two
// pairings, classes in the simple and projective bases, and the K-level
// identities (one-colour q-binomials, triangularity, coproduct constants,
// Mackey, orthonormality, duality).

#include <map>
#include <string>
#include <vector>

#include "klrfold/crystal.hpp"
#include "klrfold/falgebra.hpp"
#include "klrfold/modcat.hpp"

namespace klrfold {

/// Element of K(P_nu) (coefficients on [P_b]) or K(L_nu) (on [L_b]); labels are iota strings.
struct KClass {
  Weight nu;
  std::map<std::string, LaurentScalar> coeff;
};

struct PairingReport {
  SeriesScalar value;
  int precision = 0;
  int trunc = 0;        // truncation used for the value
  int trunc_check = 0;  // larger truncation used for the stability check
  bool stable = false;
};

/// Self-dual simples of a generated module crystal with iota labels and twisted characters.
struct SimpleTable {
  FoldedDatum fd;
  ModuleCrystal crystal;
  CrystalGraph graph;
  std::vector<int> jseq;
  std::vector<std::vector<int>> iota;
  std::vector<std::string> label;
  std::vector<DualElement> dual;  // [L_b] as a functional on words

  int size() const { return static_cast<int>(label.size()); }
  std::vector<int> at(const Weight& nu) const;
  int index_of(const std::string& label) const;
};

SimpleTable simple_table(ModCat& mc, int max_height, long dim_cap = 400000);

/// P_{w_1} o ... o P_{w_k} built from one-colour projectives truncated at trunc.
Module projective_word(ModCat& mc, const JWord& w, int trunc);

/// Graded trace of sigma on Q^psi (x)_R P through degree `precision`.
SeriesScalar tensor_trace_series(const ModCat& mc, const Module& q, const Module& p, int precision);

/// (P_x, P_y) through the given precision, with a stability check at a larger truncation.
PairingReport pair_proj_proj(ModCat& mc, const JWord& x, const JWord& y, int precision);
/// <P_x, M> as a graded trace on Hom(P_x, M).
LaurentScalar pair_proj_simple(const ModCat& mc, const JWord& x, const Module& m);

struct IdentityReport {
  bool ok = false;
  std::string detail;
};

/// [P(j)^(m)][P(j)^(n)] = [m+n choose n]_j [P(j)^(m+n)], tested against the simple basis.
IdentityReport qbinomial_identity_check(ModCat& mc, int j, int m, int n);

struct TriangularityReport {
  Weight nu;
  std::vector<std::vector<int>> iota;  // sorted lexicographically
  std::vector<std::vector<LaurentScalar>> matrix;  // rows P^(c), columns L
  bool ok = false;
  std::vector<std::string> failures;
};

/// Divided power word theta_{j1}^{(c1)} theta_{j2}^{(c2)} ... along jseq.
JWord expand_iota(const std::vector<int>& c, const std::vector<int>& jseq);
/// <P^(c), L_b> from the twisted character of L_b.
LaurentScalar pair_divided(const SimpleTable& t, const std::vector<int>& c, int b);
TriangularityReport iota_triangularity(const SimpleTable& t, const Weight& nu);

/// Class of P_w in K(P) on the [P_b] basis.
KClass projective_class(const SimpleTable& t, const JWord& w);
/// Coordinates of a functional in the simple basis at its weight; false if not in the Z[q,q^-1]-span.
bool expand_dual(const FAlgebra& f, const SimpleTable& t, const DualElement& phi, KClass& out);

struct CoproductReport {
  /// (label, label') -> coefficient of [P_b] (x) [P_b'] in r(x)
  std::map<std::pair<std::string, std::string>, LaurentScalar> constants;
  bool integral = true;
  bool bar_invariant = true;
  std::vector<std::string> failures;
  bool ok() const { return integral && failures.empty(); }
};
CoproductReport coproduct_constants(ModCat& mc, const SimpleTable& t, const KClass& x, const Weight& lambda,
                                    const Weight& mu);

struct MackeyReport {
  int terms = 0;            // a-stable tuples over J
  int traceless_orbits = 0; // non-stable tuples over I, grouped in orbits
  long checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};
MackeyReport mackey_check(ModCat& mc, const Weight& l1, const Weight& l2, const Weight& m1, const Weight& m2,
                          const Module& a, const Module& b);

struct OrthonormalityReport {
  int checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};
/// [P_b] by inverting the divided-power pairing matrix, then <[P_b], [L_b']> on all labels.
OrthonormalityReport orthonormality(const SimpleTable& t, int max_height);

struct DualityReport {
  int checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};
/// Truncated one-colour projectives: D(P o Q) = shift(DQ o DP, |P|.|Q|) as equivariant modules,
/// D^2 = id on the table's simples, and <P_w, L> bar-invariant for self-dual L.
DualityReport duality_functoriality(ModCat& mc, const SimpleTable& t, int trunc);

struct LeadingReport {
  long checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};
/// r_{j^p}[M] = [eps choose p]_j [e~_j^p M] + terms with smaller eps_j.
LeadingReport leading_coefficient_check(const FAlgebra& f, const SimpleTable& t, int max_height);

}  // namespace klrfold
