#include <algorithm>
#include <vector>

#include "klrfold/errors.hpp"
#include "klrfold/modcat.hpp"
#include "module_internal.hpp"

namespace klrfold {

namespace {

// Blocks whose first (or last) k*t colours have content k*j.
std::vector<int> blocks_with_prefix(const Module& mod, const std::string& orbit, int k, bool right) {
  std::string target;
  for (char c : orbit) target.append(k, c);
  std::sort(target.begin(), target.end());
  const size_t len = target.size();
  std::vector<int> out;
  for (size_t b = 0; b < mod.blocks.size(); ++b) {
    const std::string& s = mod.blocks[b].seq;
    if (s.size() < len) continue;
    std::string pre = right ? s.substr(s.size() - len) : s.substr(0, len);
    std::sort(pre.begin(), pre.end());
    if (pre == target) out.push_back(static_cast<int>(b));
  }
  return out;
}

Module zero_module(int n, int m) {
  detail::RawModule raw(n, m, m ? std::vector<int>{m} : std::vector<int>{});
  return detail::finalize(std::move(raw));
}

}  // namespace

// hd(X) for X = L(j) o M has all other composition factors with smaller ε_j,
// so rad X is the largest submodule killed by the idempotent E of the top
// ε_j-prefix. Dually, D(hd X) is the submodule of DX generated by E(DX).
// Since f̃_j M = q_j^ε hd X is self-dual, f̃_j M = q_j^{-ε} D(hd X).
Module ModCat::f_op(const Module& mod, int j, bool star) {
  if (mod.parts.size() > 1) throw DomainError("crystal operators act on modules over a single algebra");
  Module lj = one_colour_simple(j);
  int eps = epsilon(mod, j, star);
  Module x = star ? induce(mod, lj) : induce(lj, mod);
  Module dx = dualize(x);
  std::vector<int> whole = blocks_with_prefix(dx, orbit_seq(j), eps + 1, star);
  Module s = generated_submodule(dx, {}, whole);
  return shift(s, -eps * fd_.folded.d(j));
}

// A map L(j) -> M is determined by the image of the generator of L(j) in
// e_i M, i the sorted orbit, which may be any vector killed by the y's of
// the j strands. sigma acts by f -> sigma_M f sigma_L^{-1}.
Module ModCat::hom_from_lj(const Module& mod, int j, bool star) const {
  if (mod.parts.size() > 1) throw DomainError("crystal operators act on modules over a single algebra");
  const std::string i = orbit_seq(j);
  const int t = static_cast<int>(i.size());
  const int rest = mod.m - t;
  if (rest < 0) return zero_module(n(), 0);
  const int off = star ? rest : 0;
  const int roff = star ? 0 : t;
  detail::RawModule raw(n(), rest, rest ? std::vector<int>{rest} : std::vector<int>{});
  std::vector<SVec> basis;
  std::vector<int> hidx(mod.dim(), -1);
  for (const ModBlock& b : mod.blocks) {
    if (b.seq.compare(off, t, i) != 0) continue;
    std::map<std::pair<int, std::uint32_t>, linalg::Vec> eq;
    for (int l = 0; l < t; ++l)
      for (int c = 0; c < b.dim; ++c)
        for (auto [r, v] : column(mod.y[off + l], b.off + c)) {
          auto& row = eq[{l, r}];
          if (row.empty()) row.assign(b.dim, 0);
          row[c] = v;
        }
    linalg::Dense sys(static_cast<int>(eq.size()), b.dim);
    int r = 0;
    for (const auto& [key, row] : eq) {
      std::copy(row.begin(), row.end(), sys.a.begin() + static_cast<long>(r) * b.dim);
      ++r;
    }
    linalg::Dense ns = eq.empty() ? linalg::Dense::identity(b.dim) : linalg::nullspace(sys);
    std::vector<int> pivots = linalg::rref(sys);
    std::vector<bool> is_pivot(b.dim, false);
    for (int p : pivots) is_pivot[p] = true;
    int k = 0;
    for (int c = 0; c < b.dim; ++c) {
      if (is_pivot[c] && !eq.empty()) continue;
      SVec v;
      for (int cc = 0; cc < b.dim; ++cc)
        if (ns(k, cc)) v.emplace_back(b.off + cc, ns(k, cc));
      hidx[b.off + c] = raw.add_basis(b.seq.substr(roff, rest), b.deg);
      basis.push_back(std::move(v));
      ++k;
    }
  }
  auto coords = [&](const SVec& v) {
    SVec out;
    for (auto [r, c] : v)
      if (hidx[r] >= 0) out.emplace_back(hidx[r], c);
    std::sort(out.begin(), out.end());
    return out;
  };
  const Word back = perm::canonical_word(perm::inverse(detail::rotation(fd_.aut, i)));
  for (size_t h = 0; h < basis.size(); ++h) {
    const SVec& x = basis[h];
    for (int l = 0; l < rest; ++l) raw.gens[l][h] = coords(mat_apply(mod.y[roff + l], x));
    for (int k = 0; k + 1 < rest; ++k) raw.gens[rest + k][h] = coords(mat_apply(mod.tau[roff + k], x));
    SVec v = x;
    for (auto it = back.rbegin(); it != back.rend(); ++it) v = mat_apply(mod.tau[off + *it], v);
    raw.gens[raw.gen_count() - 1][h] = coords(mat_apply(mod.sigma, v));
  }
  return detail::finalize(std::move(raw));
}

// The socle of Hom(L(j), Res M) is q_j^{eps-1} ẽ_j M.
Module ModCat::e_op(const Module& mod, int j, bool star) const {
  const int t = static_cast<int>(orbit_seq(j).size());
  const int eps = epsilon(mod, j, star);
  if (eps == 0) return zero_module(n(), std::max(mod.m - t, 0));
  Module h = hom_from_lj(mod, j, star);
  if (h.dim() > dense_cap) throw SizeError("Hom space too large for the socle computation");
  return shift(socle(h), (1 - eps) * fd_.folded.d(j));
}

}  // namespace klrfold
