// Homomorphisms out of a cyclic module: walk m = R.gen breadth first, record
// every linear relation found among the images of basis words, and impose
// the same relations on the unknown image of gen.

#include <map>
#include <random>

#include "klrfold/errors.hpp"
#include "module_internal.hpp"

namespace klrfold {

using linalg::Dense;
using u64 = std::uint64_t;

namespace {

/// Sparse semi-echelon basis that remembers each row as a combination of inserted vectors.
class TrackedEchelon {
 public:
  /// Reduces v; returns the residual and fills combo with the combination subtracted.
  SVec reduce(SVec v, SVec& combo) const {
    combo.clear();
    size_t pos = 0;
    while (pos < v.size()) {
      auto it = rows_.find(v[pos].first);
      if (it == rows_.end()) {
        ++pos;
        continue;
      }
      u64 c = v[pos].second;
      svec_axpy(v, it->second.first, Fp::neg(c));
      svec_axpy(combo, it->second.second, c);
    }
    return v;
  }
  /// Stores residual (nonzero) for the inserted vector with index k and pre-reduction combo.
  void insert(SVec residual, const SVec& combo, std::uint32_t k) {
    SVec c = {{k, 1}};
    svec_axpy(c, combo, Fp::neg(1));
    u64 inv = Fp::inv(residual[0].second);
    for (auto& e : residual) e.second = Fp::mul(e.second, inv);
    for (auto& e : c) e.second = Fp::mul(e.second, inv);
    std::uint32_t piv = residual[0].first;
    rows_.emplace(piv, std::make_pair(std::move(residual), std::move(c)));
  }

 private:
  std::map<std::uint32_t, std::pair<SVec, SVec>> rows_;
};

/// Incremental reduced rows over Fp of fixed width.
struct SmallSpan {
  int width;
  std::vector<linalg::Vec> rows;
  std::vector<int> piv;
  bool full() const { return static_cast<int>(rows.size()) == width; }
  void insert(linalg::Vec v) {
    for (size_t r = 0; r < rows.size(); ++r)
      if (v[piv[r]]) {
        u64 c = v[piv[r]];
        for (int k = 0; k < width; ++k) v[k] = Fp::sub(v[k], Fp::mul(c, rows[r][k]));
      }
    int p = -1;
    for (int k = 0; k < width; ++k)
      if (v[k]) {
        p = k;
        break;
      }
    if (p < 0) return;
    u64 inv = Fp::inv(v[p]);
    for (auto& x : v) x = Fp::mul(x, inv);
    for (size_t r = 0; r < rows.size(); ++r)
      if (rows[r][p]) {
        u64 c = rows[r][p];
        for (int k = 0; k < width; ++k) rows[r][k] = Fp::sub(rows[r][k], Fp::mul(c, v[k]));
      }
    rows.push_back(std::move(v));
    piv.push_back(p);
  }
};

struct CyclicWalk {
  std::vector<std::vector<SVec>> images;  // per basis word, image of each unknown
  std::vector<int> unknown;                // global indices of the candidate block of n
  std::vector<linalg::Vec> solutions;
};

CyclicWalk walk(const Module& m, const SVec& gen, const Module& n, bool with_sigma) {
  CyclicWalk w;
  if (gen.empty()) throw DomainError("zero generator");
  const ModBlock& gb = m.blocks[m.block_of[gen[0].first]];
  int nb = n.find_block(gb.seq, gb.deg);
  if (nb < 0) return w;
  for (int k = 0; k < n.blocks[nb].dim; ++k) w.unknown.push_back(n.blocks[nb].off + k);
  const int b = static_cast<int>(w.unknown.size());
  SmallSpan cons{b, {}, {}};

  auto add_constraint = [&](const std::vector<SVec>& c) {
    std::map<std::uint32_t, linalg::Vec> eqs;
    for (int u = 0; u < b; ++u)
      for (const auto& [r, v] : c[u]) {
        auto& row = eqs[r];
        if (row.empty()) row.assign(b, 0);
        row[u] = v;
      }
    for (auto& [r, row] : eqs) {
      if (cons.full()) return;
      cons.insert(std::move(row));
    }
  };
  auto combine = [&](const SVec& combo, std::vector<SVec> acc) {
    // acc - sum_j combo_j images[j]
    for (const auto& [j, c] : combo)
      for (int u = 0; u < b; ++u) svec_axpy(acc[u], w.images[j][u], Fp::neg(c));
    return acc;
  };

  TrackedEchelon ech;
  std::vector<SVec> vecs;
  auto add_word = [&](SVec v, std::vector<SVec> img) -> bool {
    SVec combo;
    SVec res = ech.reduce(v, combo);
    if (res.empty()) {
      add_constraint(combine(combo, std::move(img)));
      return false;
    }
    ech.insert(std::move(res), combo, static_cast<std::uint32_t>(vecs.size()));
    vecs.push_back(std::move(v));
    w.images.push_back(std::move(img));
    return true;
  };

  std::vector<SVec> start(b);
  for (int u = 0; u < b; ++u) start[u] = {{static_cast<std::uint32_t>(w.unknown[u]), 1}};
  add_word(gen, start);
  const int ng = m.m == 0 ? 0 : 2 * m.m - 1;
  for (size_t k = 0; k < vecs.size(); ++k) {
    for (int g = 0; g < ng; ++g) {
      if (g >= m.m && !m.has_tau(g - m.m)) continue;
      const linalg::Sparse& gm = detail::gen_matrix(m, g);
      const linalg::Sparse& gn = detail::gen_matrix(n, g);
      SVec v = mat_apply(gm, vecs[k]);
      std::vector<SVec> img(b);
      for (int u = 0; u < b; ++u) img[u] = mat_apply(gn, w.images[k][u]);
      if (v.empty()) {
        add_constraint(img);
        continue;
      }
      add_word(std::move(v), std::move(img));
    }
  }
  if (static_cast<int>(vecs.size()) != m.dim()) throw DomainError("vector does not generate the module");
  if (with_sigma && m.n > 1) {
    SVec combo;
    SVec res = ech.reduce(mat_apply(m.sigma, gen), combo);
    if (!res.empty()) throw DomainError("sigma image outside the generated module");
    std::vector<SVec> img(b);
    for (int u = 0; u < b; ++u) img[u] = mat_apply(n.sigma, w.images[0][u]);
    add_constraint(combine(combo, std::move(img)));
  }
  Dense c(static_cast<int>(cons.rows.size()), b);
  for (size_t r = 0; r < cons.rows.size(); ++r)
    for (int k = 0; k < b; ++k) c(static_cast<int>(r), k) = cons.rows[r][k];
  Dense ns = cons.rows.empty() ? Dense::identity(b) : linalg::nullspace(c);
  for (int r = 0; r < ns.rows; ++r) {
    linalg::Vec v(b);
    for (int k = 0; k < b; ++k) v[k] = ns(r, k);
    w.solutions.push_back(std::move(v));
  }
  return w;
}

}  // namespace

std::vector<SVec> ModCat::cyclic_hom(const Module& m, const SVec& gen, const Module& n, bool with_sigma) const {
  CyclicWalk w = walk(m, gen, n, with_sigma);
  std::vector<SVec> out;
  for (const auto& s : w.solutions) {
    SVec v;
    for (size_t k = 0; k < s.size(); ++k)
      if (s[k]) v.emplace_back(static_cast<std::uint32_t>(w.unknown[k]), s[k]);
    out.push_back(std::move(v));
  }
  return out;
}

bool ModCat::isomorphic_cyclic(const Module& m, const SVec& gen, const Module& n) const {
  if (m.dim() != n.dim() || m.n != n.n) return false;
  if (character(m) != character(n)) return false;
  CyclicWalk w = walk(m, gen, n, true);
  if (w.solutions.empty()) return false;
  std::mt19937_64 rng(0x5eed);
  const int b = static_cast<int>(w.unknown.size());
  linalg::Vec coef(b, 0);
  for (const auto& s : w.solutions) {
    u64 r = rng() % Fp::modulus();
    for (int k = 0; k < b; ++k) coef[k] = Fp::add(coef[k], Fp::mul(r, s[k]));
  }
  // The map sends basis word k to sum_u coef_u images[k][u]; test its rank.
  TrackedEchelon ech;
  for (size_t k = 0; k < w.images.size(); ++k) {
    SVec col;
    for (int u = 0; u < b; ++u) svec_axpy(col, w.images[k][u], coef[u]);
    SVec combo;
    SVec res = ech.reduce(std::move(col), combo);
    if (res.empty()) return false;
    ech.insert(std::move(res), {}, static_cast<std::uint32_t>(k));
  }
  return true;
}

}  // namespace klrfold
