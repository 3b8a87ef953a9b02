#pragma once

// Finite (truncated) bicrystals: the elementary sl2 bicrystals B_t, the
// crystal axioms, the B(infinity) recognition criterion and related checks.

#include <string>
#include <vector>

#include "klrfold/cartan.hpp"

namespace klrfold {

struct ModuleCrystal;

/// Bicrystal on vertices 0..N-1 with vertex 0 the highest weight element.
/// Edge maps hold a vertex index or kNone (zero, or outside the truncation:
/// a vertex of height max_height has no computed f/f* edges).
struct CrystalGraph {
  static constexpr int kNone = -1;
  int rank = 0;
  std::vector<std::vector<int>> cartan;  // c_ij = <alpha_i^vee, alpha_j>
  std::vector<int> base_pairing;          // <wt(b0), alpha_i^vee>
  int max_height = 0;
  std::vector<std::string> label;
  std::vector<Weight> nu;  // wt(b) = wt(b0) - nu(b)
  std::vector<std::vector<int>> eps, eps_star;
  std::vector<std::vector<int>> f, f_star, e, e_star;

  int size() const { return static_cast<int>(nu.size()); }
  int height(int b) const;
  /// <wt(b), alpha_i^vee>
  int pairing(int b, int i) const;
  int phi(int b, int i) const { return eps[b][i] + pairing(b, i); }
  /// eps_i + eps*_i + <wt, alpha_i^vee>
  int sl2_t(int b, int i) const { return eps[b][i] + eps_star[b][i] + pairing(b, i); }
  /// Whether f/f* edges out of b are available.
  bool f_defined(int b) const { return height(b) < max_height; }
  /// Fills e and e_star as the partial inverses of f and f_star.
  void invert_edges();
};

struct CrystalReport {
  long checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
  void fail(std::string s) {
    if (failures.size() < 50) failures.push_back(std::move(s));
  }
};

// Elementary sl2 bicrystal B_t.
struct BtElement {
  int a = 0, b = 0, c = 0;
  friend bool operator==(const BtElement&, const BtElement&) = default;
  friend auto operator<=>(const BtElement&, const BtElement&) = default;
};

bool bt_valid(const BtElement& x, int t);
enum class BtOp { f, f_star, e, e_star };
/// Returns false when the result is zero (e, e* only).
bool bt_apply(BtOp op, const BtElement& x, int t, BtElement& out);
int bt_eps(const BtElement& x);
int bt_eps_star(const BtElement& x);
/// Number of f/f* steps from (0,0,t).
int bt_depth(const BtElement& x, int t);
/// B_t truncated to depth <= max_depth as a rank-1 crystal graph.
CrystalGraph bt_graph(int t, int max_depth);

/// Converts a generated module crystal; e/e* are the inverses of f/f*.
CrystalGraph crystal_from_modules(const ModuleCrystal& mc, const FoldedDatum& fd);

CrystalReport crystal_axioms_check(const CrystalGraph& g);
CrystalReport criterion_check(const CrystalGraph& g);
CrystalReport efcommute_check(const CrystalGraph& g);
/// e~*_i^c f~_i b = f~_i e~*_i^c b whenever eps*_i(f~_i b) = eps*_i(b) = c.
CrystalReport estar_power_commute_check(const CrystalGraph& g);
CrystalReport local_sl2_check(const CrystalGraph& g, int b, int j);
CrystalReport local_sl2_check_all(const CrystalGraph& g);

/// Round-robin orbit sequence 0,1,...,r-1,0,1,... of the given length.
std::vector<int> round_robin(int rank, int length);
/// epsilon string along the sequence, trailing zeros removed; throws DomainError
/// if an e-edge needed for stripping is missing.
std::vector<int> iota_string(const CrystalGraph& g, int b, const std::vector<int>& jseq);
std::string iota_str(const std::vector<int>& c);
/// Whether iota is injective on the graph.
bool iota_injective(const CrystalGraph& g, const std::vector<int>& jseq);

std::string to_dot(const CrystalGraph& g, const std::vector<int>& jseq, const std::vector<std::string>& orbit_names);

}  // namespace klrfold
