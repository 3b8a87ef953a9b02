#pragma once

// Finite-dimensional graded equivariant modules over folded KLR algebras,
// realised over the prime field Fp with zeta_n mapped to a fixed primitive
// n-th root of unity. Basis vectors are grouped into blocks of constant
// idempotent sequence and degree.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "klrfold/cartan.hpp"
#include "klrfold/coeff.hpp"
#include "klrfold/klr.hpp"
#include "klrfold/linalg.hpp"

namespace klrfold {

using SVec = std::vector<std::pair<std::uint32_t, std::uint64_t>>;  // sorted, no zeros

struct ModBlock {
  std::string seq;  // colours (base indices) as bytes
  int deg = 0;
  int off = 0;
  int dim = 0;
};

/// A module over R(p_1) (x) ... (x) R(p_r) for the composition `parts` of m
/// strands (a single part for an honest R(nu)-module), with structure map
/// sigma sending block s to block a(s).
struct Module {
  int n = 1;
  int m = 0;
  std::vector<int> parts;
  std::vector<ModBlock> blocks;
  std::vector<int> block_of;
  std::vector<linalg::Sparse> y, tau;
  linalg::Sparse sigma;
  /// Polynomial truncation bound for truncated projectives (-1 if none).
  int trunc = -1;

  int dim() const { return static_cast<int>(block_of.size()); }
  bool has_tau(int k) const;
  int find_block(const std::string& seq, int deg) const;
  Weight weight(int rank) const;
  bool is_zero() const { return dim() == 0; }
};

SVec column(const linalg::Sparse& s, int c);
SVec mat_apply(const linalg::Sparse& s, const SVec& v);
void svec_axpy(SVec& acc, const SVec& x, std::uint64_t c);

/// Image of the cyclotomic integer c under zeta -> fixed root of unity.
std::uint64_t to_fp(const CycloScalar& c);
/// Recognise sum_k m_k omega^k (0 <= m_k <= bound) as an element of Z[zeta_n].
CycloScalar lift_root_sum(const std::vector<std::uint64_t>& power_traces, int n, long bound);

/// Graded character: (sequence, degree) -> dimension.
using Character = std::map<std::pair<std::string, int>, int>;

struct CheckReport {
  long checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

class ModCat {
 public:
  explicit ModCat(const FoldedDatum& fd);

  const FoldedDatum& folded() const { return fd_; }
  KLRAlgebra& algebra() { return alg_; }
  int n() const { return fd_.n(); }
  /// Sorted orbit sequence of j and its a-rotation permutation pi with pi.i = a(i).
  std::string orbit_seq(int j) const;

  // Constructions.
  Module unit() const;
  Module one_colour_simple(int j) const;
  Module one_colour_projective(int j, int trunc) const;
  Module tensor(const Module& a, const Module& b) const;
  Module induce(const Module& t);
  Module induce(const Module& a, const Module& b) { return induce(tensor(a, b)); }
  /// Keeps the blocks whose first |lambda| colours have content lambda (base weight).
  Module restrict(const Module& mod, const Weight& lambda) const;
  Module dualize(const Module& mod) const;
  Module shift(const Module& mod, int d) const;
  /// Replaces sigma by zeta^k sigma.
  Module twist(const Module& mod, int k) const;
  Module direct_sum(const Module& a, const Module& b) const;
  /// a*M: same space, a vector of block s now lies in block a(s); sigma kept.
  Module pullback(const Module& mod) const;

  /// Submodule generated by the given homogeneous vectors (each within one
  /// block) together with every basis vector of the listed blocks.
  Module generated_submodule(const Module& mod, const std::vector<SVec>& seeds,
                             const std::vector<int>& whole_blocks = {}) const;
  /// Dimension of the R-submodule (sigma ignored) generated by the vectors.
  int span_dim(const Module& mod, const std::vector<SVec>& seeds, bool with_sigma) const;
  /// Quotient by the submodule generated by the given vectors.
  Module quotient(const Module& mod, const std::vector<SVec>& seeds) const;

  // Invariants.
  CheckReport check_relations(const Module& mod) const;
  CheckReport check_cocycle(const Module& mod) const;
  Character character(const Module& mod) const;
  /// ε_j (left) or ε*_j (right).
  int epsilon(const Module& mod, int j, bool right = false) const;
  /// <P_{j_1} o ... o P_{j_k}, M> as a Laurent polynomial over Z[zeta_n].
  LaurentScalar word_pairing(const Module& mod, const std::vector<int>& jword) const;
  /// All pairings with P_w for J-words w of the module's folded weight.
  std::map<std::vector<int>, LaurentScalar> twisted_character(const Module& mod) const;

  // Small-module algebra (dense): radical of the acting algebra.
  Module head(const Module& mod) const;
  Module socle(const Module& mod) const;
  bool is_simple(const Module& mod) const;
  /// Basis of degree-d maps A -> B sending block s to block a^k(s) that
  /// commute with y and tau (and with sigma if requested), as B x A matrices.
  std::vector<linalg::Sparse> intertwiners(const Module& a, const Module& b, int d, int aut_power,
                                           bool with_sigma) const;
  /// Isomorphism of equivariant modules by solving the intertwiner system.
  bool isomorphic(const Module& a, const Module& b) const;
  /// Dimension of the space of degree-0 intertwiners a -> b (ignores sigma).
  int hom_dim(const Module& a, const Module& b) const;
  /// sum_d tr(f -> tau^{-1} f sigma, Hom(P, M)_d) q^d for finite modules.
  LaurentScalar graded_hom_trace(const Module& p, const Module& mod) const;

  /// Images of gen under the degree-0 homomorphisms m -> n, for m generated by
  /// the homogeneous vector gen; with_sigma restricts to equivariant maps.
  /// Throws DomainError when gen does not generate m.
  std::vector<SVec> cyclic_hom(const Module& m, const SVec& gen, const Module& n, bool with_sigma) const;
  /// Equivariant isomorphism test for m generated by gen.
  bool isomorphic_cyclic(const Module& m, const SVec& gen, const Module& n) const;

  /// Structures sigma on an a-stable simple module, one per n/t-th root of unity.
  std::vector<Module> equivariant_structures(const Module& underlying) const;
  struct TracelessWitness {
    bool traceless = false;
    int period = 1;
    Module summand;
  };
  TracelessWitness traceless_decompose(const Module& mod) const;

  // Crystal operators on self-dual simple objects.
  Module f_op(const Module& mod, int j, bool star = false);
  /// Hom_{R(j)}(L(j), Res_{j, nu-j} M) (or its right-hand mirror) as an R(nu-j)-module.
  Module hom_from_lj(const Module& mod, int j, bool star = false) const;
  /// ẽ_j via the socle formula; returns the zero module when ε_j = 0.
  Module e_op(const Module& mod, int j, bool star = false) const;

  /// Dimension cap for the radical-based algorithms.
  int dense_cap = 80;

 private:
  struct SplitTerm {
    Perm rep;
    std::vector<std::pair<NormalWord, std::uint64_t>> parab;
  };
  const std::vector<SplitTerm>& coset_split(const Perm& z, const std::string& s, const std::vector<int>& parts);

  FoldedDatum fd_;
  KLRAlgebra alg_;
  std::unordered_map<std::string, std::vector<SplitTerm>> split_cache_;
};

/// A self-dual simple object of the module crystal.
struct CrystalVertex {
  Module mod;
  Weight nu;  // over J
  Character ch;
  std::map<std::vector<int>, LaurentScalar> twisted;
  std::vector<int> eps, eps_star;
  int height() const;
};

/// The crystal generated from [1] by the f~_j and f~*_j, up to a height.
/// Edge entries: vertex index, kBeyond above the height bound, kSkipped when
/// the induced module would exceed the dimension cap.
struct ModuleCrystal {
  static constexpr int kBeyond = -1;
  static constexpr int kSkipped = -2;
  int rank = 0;
  int max_height = 0;
  long dim_cap = 0;
  std::vector<CrystalVertex> v;
  std::vector<std::vector<int>> f, f_star;
  /// Weights at which some incoming edge was skipped, so vertex counts there are lower bounds.
  std::vector<Weight> incomplete;
  /// Pairs identified by isomorphic() as a cross-check of the character-based identification.
  int iso_checks = 0;

  bool complete() const { return incomplete.empty(); }
  std::vector<int> at_weight(const Weight& nu) const;
  std::map<Weight, int> counts() const;
};

/// BFS from [1]; vertices are identified by (character, twisted character).
ModuleCrystal generate_crystal_simples(ModCat& mc, int max_height, long dim_cap = 400000);

/// Minimal length representatives of S_m / (S_{p1} x ... x S_{pr}) in lex order.
std::vector<Perm> block_shuffles(const std::vector<int>& parts);

}  // namespace klrfold
