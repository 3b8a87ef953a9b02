#pragma once

// Lusztig's algebra f for a Cartan datum (J, .): the free algebra 'f on
// theta_j, its twisted coproduct, the bilinear form and its radical, divided
// powers, derivations, the involutions, and axiom checkers for bases of
// (dual) canonical type.

#include <map>
#include <string>
#include <vector>

#include "klrfold/cartan.hpp"
#include "klrfold/coeff.hpp"

namespace klrfold {

using JWord = std::vector<int>;

struct FreeElement {
  std::map<JWord, RationalScalar> terms;

  static FreeElement word(JWord w);
  bool is_zero() const { return terms.empty(); }
  void add(const JWord& w, const RationalScalar& c);
  FreeElement& operator+=(const FreeElement& o);
  FreeElement operator-() const;
  friend FreeElement operator+(FreeElement a, const FreeElement& b) { return a += b; }
  friend FreeElement operator-(FreeElement a, const FreeElement& b) { return a += -b; }
  friend FreeElement operator*(const RationalScalar& c, const FreeElement& x);
  friend bool operator==(const FreeElement& a, const FreeElement& b) { return a.terms == b.terms; }
  std::string str(const std::vector<std::string>& names = {}) const;
};

struct TensorElement {
  std::map<std::pair<JWord, JWord>, RationalScalar> terms;
  bool is_zero() const { return terms.empty(); }
  void add(const JWord& a, const JWord& b, const RationalScalar& c);
  TensorElement& operator+=(const TensorElement& o);
  friend bool operator==(const TensorElement& a, const TensorElement& b) { return a.terms == b.terms; }
};

/// Functional on 'f_nu given by its values on words; elements of f*.
struct DualElement {
  Weight nu;
  std::map<JWord, LaurentScalar> values;  // zero values omitted
  LaurentScalar at(const JWord& w) const;
  friend bool operator==(const DualElement& a, const DualElement& b) { return a.nu == b.nu && a.values == b.values; }
};

struct GramData {
  Weight nu;
  std::vector<JWord> words;
  /// <w, w'> = numerator[w][w'] / denominator.
  std::vector<std::vector<LaurentScalar>> numerator;
  LaurentScalar denominator;
  int rank = 0;
  std::vector<FreeElement> kernel;
  int dim_free() const { return static_cast<int>(words.size()); }
};

struct AxiomReport {
  std::vector<std::string> names;  // one per condition
  std::vector<bool> passed;
  std::vector<std::string> failures;
  bool ok() const;
  void set(int k, bool v, const std::string& why = {});
};

class FAlgebra {
 public:
  /// twist = -1 replaces q^{|x2|.|y1|} by q^{-|x2|.|y1|} throughout, the convention
  /// under which the form matches the graded pairing of projectives.
  explicit FAlgebra(const CartanDatum& datum, int twist = 1);
  int twist() const { return twist_; }

  int rank() const { return static_cast<int>(datum_.size()); }
  const CartanDatum& datum() const { return datum_; }
  Weight content(const JWord& w) const;
  std::vector<JWord> words(const Weight& nu) const;

  FreeElement one() const { return FreeElement::word({}); }
  FreeElement theta(int j) const { return FreeElement::word({j}); }
  FreeElement multiply(const FreeElement& x, const FreeElement& y) const;
  /// (x1 (x) x2)(y1 (x) y2) = q^{|x2|.|y1|} x1 y1 (x) x2 y2.
  TensorElement twisted_multiply(const TensorElement& s, const TensorElement& t) const;
  TensorElement coproduct(const FreeElement& x) const;
  /// (r (x) 1) r and (1 (x) r) r, flattened to word triples.
  std::map<std::vector<JWord>, RationalScalar> coproduct_left_iterate(const FreeElement& x) const;
  std::map<std::vector<JWord>, RationalScalar> coproduct_right_iterate(const FreeElement& x) const;

  RationalScalar form(const FreeElement& x, const FreeElement& y) const;
  RationalScalar form(const TensorElement& s, const TensorElement& t) const;
  /// Integral numerator of <w, w'> over prod_k (1 - q^{j_k . j_k}).
  const LaurentScalar& form_numerator(const JWord& w, const JWord& wp) const;
  LaurentScalar form_denominator(const Weight& nu) const;

  GramData gram(const Weight& nu) const;
  /// dim f_nu as the rank of the Gram matrix.
  int dim_f(const Weight& nu) const;

  FreeElement divided_power(int j, int n) const;
  /// theta_{j1}^{(c1)} theta_{j2}^{(c2)} ...
  FreeElement divided_power_monomial(const std::vector<int>& c, const std::vector<int>& jseq) const;
  /// y with r(x) containing theta_j^p (x) y (left) or y (x) theta_j^p (right).
  FreeElement r_derivation(const FreeElement& x, int j, int p, bool right) const;

  FreeElement bar(const FreeElement& x) const;
  /// Antiautomorphism fixing the generators: word reversal.
  FreeElement sigma(const FreeElement& x) const;

  /// Pairings with every word of weight nu (x projected to weight nu).
  std::vector<RationalScalar> pairing_vector(const FreeElement& x, const Weight& nu) const;
  bool in_radical(const FreeElement& x) const;
  bool equal_in_f(const FreeElement& x, const FreeElement& y) const { return in_radical(x - y); }
  /// Weights occurring in x.
  std::vector<Weight> weights(const FreeElement& x) const;

  // Dual side.
  RationalScalar evaluate(const DualElement& phi, const FreeElement& x) const;
  /// (r_{j^p} phi)(z) = phi(theta_j^{(p)} z).
  DualElement dual_r(const DualElement& phi, int j, int p) const;
  DualElement dual_sigma(const DualElement& phi) const;
  DualElement dual_bar(const DualElement& phi) const;
  /// Whether phi vanishes on the radical (i.e. lies in f*).
  bool factors_through_f(const DualElement& phi) const;

  AxiomReport canonical_type_check(const std::vector<FreeElement>& basis, int max_height) const;
  AxiomReport dual_canonical_type_check(const std::vector<DualElement>& basis, int max_height) const;
  /// Elements b of a canonical-type basis with b v_lambda != 0 (lambda_j = <alpha_j^vee, lambda>).
  std::vector<int> hw_basis(const std::vector<int>& lambda, const std::vector<FreeElement>& basis, int max_height,
                            std::vector<std::string>* failures = nullptr) const;

  std::string gram_csv(const GramData& g, const std::vector<std::string>& names) const;

 private:
  CartanDatum datum_;
  int twist_ = 1;
  mutable std::map<std::pair<JWord, JWord>, LaurentScalar> numer_cache_;
};

namespace ratlin {
using Matrix = std::vector<std::vector<RationalScalar>>;
/// In-place reduced row echelon form; returns pivot columns.
std::vector<int> rref(Matrix& a);
int rank(Matrix a);
/// Basis of {x : A x = 0}.
std::vector<std::vector<RationalScalar>> nullspace(Matrix a, int cols);
/// Some solution of A x = b, or false.
bool solve(const Matrix& a, const std::vector<RationalScalar>& b, std::vector<RationalScalar>& x);
}  // namespace ratlin

/// Rank of an integer polynomial matrix by fraction-free elimination.
int bareiss_rank(std::vector<std::vector<PolyZ>> m);

}  // namespace klrfold
