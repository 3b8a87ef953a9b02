#pragma once

// KLR algebra R(nu) as a rewriting engine on the normal-form basis
// tau_{Can(w)} y^beta e_s, where Can(w) is the lexicographically least
// reduced word of w.

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "klrfold/cartan.hpp"
#include "klrfold/coeff.hpp"

namespace klrfold {

/// Polynomial in two commuting variables u, v: (exp_u, exp_v) -> coefficient.
using Poly2 = std::map<std::pair<int, int>, CycloScalar>;

struct QFamily {
  std::vector<std::vector<Poly2>> q;  // q[i][j] = Q_ij
  const Poly2& operator()(int i, int j) const { return q[i][j]; }
};

QFamily default_q_family(const CartanDatum& datum);
/// Checks the four conditions on Q (vanishing diagonal, homogeneity with
/// nonzero extreme coefficients, symmetry, a-invariance).
ValidationReport validate_q_family(const CartanDatum& datum, const DiagramAut& aut,
                                   const QFamily& q);

/// Permutations and sequences are stored as byte strings: z[p] = w(p),
/// s[p] = colour at position p. Positions and letters are 0-based, so the
/// letter k denotes tau_{k+1} in the usual notation.
using Perm = std::string;
using Word = std::string;

namespace perm {
Perm identity(int m);
int length(const Perm& z);
Perm left_mul(int k, const Perm& z);  // s_k z
bool is_left_descent(int k, const Perm& z);
/// Lexicographically least reduced word.
Word canonical_word(const Perm& z);
Perm from_word(const Word& w, int m);
/// (w.s)_p = s_{w^{-1}(p)}
std::string act(const Perm& z, const std::string& s);
Perm inverse(const Perm& z);
Perm compose(const Perm& a, const Perm& b);  // a o b
std::vector<Perm> all(int m);
}  // namespace perm

/// Basis word tau_{Can(z)} y^beta e_s.
struct NormalWord {
  Perm z;
  std::string beta;
  std::string s;
  friend bool operator<(const NormalWord& a, const NormalWord& b) {
    if (a.z != b.z) return a.z < b.z;
    if (a.s != b.s) return a.s < b.s;
    return a.beta < b.beta;
  }
  friend bool operator==(const NormalWord& a, const NormalWord& b) {
    return a.z == b.z && a.beta == b.beta && a.s == b.s;
  }
};

using Lin = std::map<NormalWord, CycloScalar>;

void lin_add(Lin& acc, const NormalWord& w, const CycloScalar& c);
void lin_add(Lin& acc, const Lin& x, const CycloScalar& c);

struct KLRElement {
  int m = 0;  // number of strands
  Lin terms;
  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const KLRElement& a, const KLRElement& b) {
    return a.m == b.m && a.terms == b.terms;
  }
};

KLRElement operator+(const KLRElement& a, const KLRElement& b);
KLRElement operator-(const KLRElement& a, const KLRElement& b);
KLRElement operator*(const CycloScalar& c, const KLRElement& a);

struct DegreeInfo {
  bool homogeneous = true;
  int degree = 0;
};

struct RelationReport {
  long checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Rewriting context for R(nu) for all nu over a fixed datum. Caches are
/// internal; a context must not be shared across threads.
class KLRAlgebra {
 public:
  KLRAlgebra(CartanDatum datum, QFamily q, DiagramAut aut);
  KLRAlgebra(const CartanDatum& datum, const DiagramAut& aut);

  const CartanDatum& datum() const { return datum_; }
  const QFamily& q() const { return q_; }
  const DiagramAut& aut() const { return aut_; }

  // Generators, attached to an explicit idempotent.
  KLRElement idem(const Seq& s) const;
  KLRElement y(int l, const Seq& s) const;
  KLRElement tau(int k, const Seq& s) const;
  KLRElement basis(const NormalWord& w) const;
  KLRElement scalar(const CycloScalar& c, const KLRElement& x) const;

  KLRElement multiply(const KLRElement& x, const KLRElement& y);

  /// Left multiplication of a basis element tau_{Can z} e_s (no dots) by a
  /// generator; the results are cached.
  const Lin& left_y(int l, const Perm& z, const std::string& s);
  const Lin& left_tau(int k, const Perm& z, const std::string& s);
  /// Normal form of tau_{w} e_s for an arbitrary word w.
  Lin word_nf(const Word& w, const std::string& s);
  /// Apply y^beta on the left of an element.
  Lin left_y_monomial(const std::string& beta, const Lin& x);
  Lin left_y_lin(int l, const Lin& x);
  Lin left_tau_lin(int k, const Lin& x);

  /// tau_a e_s - tau_b e_s for reduced words a, b of the same permutation.
  Lin word_difference(const Word& a, const Word& b, const std::string& s) { return diff(a, b, s); }

  int degree(const NormalWord& w) const;
  DegreeInfo degree(const KLRElement& x) const;

  KLRElement apply_a(const KLRElement& x) const;
  KLRElement apply_psi(const KLRElement& x);
  KLRElement apply_sigma(const KLRElement& x);

  RelationReport relation_suite(const Weight& nu);
  /// Associativity on random triples of normal words (with dot degree up
  /// to max_dots per word).
  RelationReport associativity(const Weight& nu, int triples, unsigned seed, int max_dots = 2);

  std::string str(const KLRElement& x) const;

  size_t cache_size() const { return ly_.size() + lt_.size() + diff_.size(); }

 private:
  Lin diff(const Word& a, const Word& b, const std::string& s);
  Lin divided_difference(int p, const std::string& t, const Perm& z, const std::string& s);
  Lin apply_q(int k, const std::string& t, const Perm& z, const std::string& s);
  Lin times_dots(const Lin& x, const std::string& beta) const;

  CartanDatum datum_;
  QFamily q_;
  DiagramAut aut_;
  std::unordered_map<std::string, Lin> ly_, lt_, diff_;
};

std::string lin_str(const CartanDatum& d, const Lin& x);

}  // namespace klrfold
