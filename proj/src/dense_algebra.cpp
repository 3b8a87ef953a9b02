// Linear-algebra constructions that are only affordable on small modules:
// intertwiner spaces, the acting algebra and its radical, equivariant
// structures, twisted Hom traces.

#include <algorithm>
#include <map>
#include <numeric>

#include "klrfold/errors.hpp"
#include "klrfold/modcat.hpp"
#include "module_internal.hpp"

namespace klrfold {

using linalg::Dense;
using linalg::Sparse;
using linalg::Vec;
using u64 = std::uint64_t;

namespace {

std::string aut_power(const DiagramAut& a, std::string s, int k) {
  int n = a.order();
  k = ((k % n) + n) % n;
  for (int r = 0; r < k; ++r) s = detail::apply_aut(a, s);
  return s;
}

// Incremental row space, kept in reduced echelon form.
struct RowSpace {
  std::vector<Vec> rows;
  std::vector<int> piv;
  bool insert(Vec v) {
    for (size_t r = 0; r < rows.size(); ++r) {
      u64 f = v[piv[r]];
      if (!f) continue;
      for (size_t c = 0; c < v.size(); ++c)
        if (rows[r][c]) v[c] = Fp::sub(v[c], Fp::mul(f, rows[r][c]));
    }
    int q = -1;
    for (size_t c = 0; c < v.size(); ++c)
      if (v[c]) {
        q = static_cast<int>(c);
        break;
      }
    if (q < 0) return false;
    u64 inv = Fp::inv(v[q]);
    for (auto& x : v) x = Fp::mul(x, inv);
    for (auto& r : rows) {
      u64 f = r[q];
      if (!f) continue;
      for (size_t c = 0; c < r.size(); ++c)
        if (v[c]) r[c] = Fp::sub(r[c], Fp::mul(f, v[c]));
    }
    rows.push_back(std::move(v));
    piv.push_back(q);
    return true;
  }
};

bool gen_present(const Module& mod, int g) { return g < mod.m || mod.has_tau(g - mod.m); }

// n-th root of c in Fp, or throws GroundFieldError.
u64 nth_root(u64 c, int n) {
  const u64 p = Fp::modulus();
  if (n == 1) return c;
  if (Fp::pow(c, (p - 1) / std::gcd(static_cast<u64>(n), p - 1)) != 1)
    throw GroundFieldError("scalar has no n-th root in the ground field");
  u64 t = p - 1, small = 1;
  for (int q = 2; q <= n; ++q)
    if (n % q == 0)
      while (t % static_cast<u64>(q) == 0) {
        t /= static_cast<u64>(q);
        small *= static_cast<u64>(q);
      }
  // e * n = 1 mod t, then correct inside the subgroup of order `small`
  u64 e = 0;
  for (u64 k = 1; k <= static_cast<u64>(n); ++k)
    if ((k * t + 1) % static_cast<u64>(n) == 0) {
      e = (k * t + 1) / static_cast<u64>(n);
      break;
    }
  u64 x0 = Fp::pow(c, e);
  u64 h = Fp::root_of_unity(static_cast<int>(small));
  u64 w = 1;
  for (u64 k = 0; k < small; ++k, w = Fp::mul(w, h)) {
    u64 x = Fp::mul(x0, w);
    if (Fp::pow(x, static_cast<u64>(n)) == c) return x;
  }
  throw GroundFieldError("n-th root extraction failed");
}

Sparse identity_sparse(int n) {
  Sparse s;
  s.rows = n;
  for (int i = 0; i < n; ++i) s.push_column({{static_cast<std::uint32_t>(i), 1}});
  return s;
}

Sparse scaled(Sparse s, u64 c) {
  for (auto& v : s.val) v = Fp::mul(v, c);
  return s;
}

}  // namespace

std::vector<Sparse> ModCat::intertwiners(const Module& a, const Module& b, int d, int k, bool with_sigma) const {
  if (a.m != b.m) return {};
  if (a.parts != b.parts) throw DomainError("intertwiners between modules over different algebras");
  const int na = static_cast<int>(a.blocks.size());
  std::vector<int> target(na, -1), var(na, 0);
  int nvars = 0;
  for (int ba = 0; ba < na; ++ba) {
    target[ba] = b.find_block(aut_power(fd_.aut, a.blocks[ba].seq, k), a.blocks[ba].deg + d);
    var[ba] = nvars;
    if (target[ba] >= 0) nvars += a.blocks[ba].dim * b.blocks[target[ba]].dim;
  }
  if (nvars == 0) return {};
  auto var_of = [&](int ba, int r, int c) { return var[ba] + r * a.blocks[ba].dim + c; };
  RowSpace eqs;
  const int gens = a.m == 0 ? 1 : 2 * a.m;
  for (int g = 0; g < gens; ++g) {
    bool is_sigma = g == gens - 1;
    if (is_sigma && !with_sigma) continue;
    if (!is_sigma && !gen_present(a, g)) continue;
    const Sparse& ga = detail::gen_matrix(a, g);
    const Sparse& gb = detail::gen_matrix(b, g);
    for (int x = 0; x < a.dim(); ++x) {
      int ba = a.block_of[x];
      int c = x - a.blocks[ba].off;
      std::map<std::uint32_t, std::map<int, u64>> rows;  // output index -> var -> coefficient
      for (auto [w, cw] : column(ga, x)) {
        int bw = a.block_of[w];
        if (target[bw] < 0) continue;
        const ModBlock& tb = b.blocks[target[bw]];
        for (int r = 0; r < tb.dim; ++r) {
          u64& slot = rows[tb.off + r][var_of(bw, r, static_cast<int>(w) - a.blocks[bw].off)];
          slot = Fp::add(slot, cw);
        }
      }
      if (target[ba] >= 0) {
        const ModBlock& tb = b.blocks[target[ba]];
        for (int r = 0; r < tb.dim; ++r)
          for (auto [out, gv] : column(gb, tb.off + r)) {
            u64& slot = rows[out][var_of(ba, r, c)];
            slot = Fp::sub(slot, gv);
          }
      }
      for (auto& [out, coefs] : rows) {
        Vec row(nvars, 0);
        bool nz = false;
        for (auto [v, cv] : coefs)
          if (cv) {
            row[v] = cv;
            nz = true;
          }
        if (nz) eqs.insert(std::move(row));
      }
    }
  }
  Dense sys(static_cast<int>(eqs.rows.size()), nvars);
  for (size_t r = 0; r < eqs.rows.size(); ++r)
    for (int c = 0; c < nvars; ++c) sys(static_cast<int>(r), c) = eqs.rows[r][c];
  Dense ns = linalg::nullspace(sys);
  std::vector<Sparse> out;
  for (int kk = 0; kk < ns.rows; ++kk) {
    std::vector<std::vector<std::pair<std::uint32_t, u64>>> cols(a.dim());
    for (int ba = 0; ba < na; ++ba) {
      if (target[ba] < 0) continue;
      const ModBlock& sb = a.blocks[ba];
      const ModBlock& tb = b.blocks[target[ba]];
      for (int r = 0; r < tb.dim; ++r)
        for (int c = 0; c < sb.dim; ++c) {
          u64 v = ns(kk, var_of(ba, r, c));
          if (v) cols[sb.off + c].emplace_back(tb.off + r, v);
        }
    }
    Sparse s;
    s.rows = b.dim();
    for (auto& col : cols) s.push_column(col);
    out.push_back(std::move(s));
  }
  return out;
}

int ModCat::hom_dim(const Module& a, const Module& b) const { return static_cast<int>(intertwiners(a, b, 0, 0, false).size()); }

bool ModCat::isomorphic(const Module& a, const Module& b) const {
  if (a.dim() != b.dim() || character(a) != character(b)) return false;
  if (a.dim() == 0) return true;
  std::vector<Sparse> basis = intertwiners(a, b, 0, 0, true);
  if (basis.empty()) return false;
  // A generic combination is invertible if any element is.
  Dense f(b.dim(), a.dim());
  u64 coef = 1;
  for (const Sparse& s : basis) {
    coef = Fp::add(Fp::mul(coef, 6364136223846793005ULL % Fp::modulus()), 1442695040888963407ULL % Fp::modulus());
    Dense ds = s.to_dense();
    for (size_t i = 0; i < f.a.size(); ++i) f.a[i] = Fp::add(f.a[i], Fp::mul(coef, ds.a[i]));
  }
  return linalg::rank(f) == a.dim();
}

LaurentScalar ModCat::graded_hom_trace(const Module& p, const Module& mod) const {
  const int nn = fd_.n();
  LaurentScalar out = LaurentScalar::constant(0, nn);
  if (p.dim() == 0 || mod.dim() == 0) return out;
  int lo = mod.blocks.front().deg, hi = lo, plo = p.blocks.front().deg, phi = plo;
  for (const auto& b : mod.blocks) lo = std::min(lo, b.deg), hi = std::max(hi, b.deg);
  for (const auto& b : p.blocks) plo = std::min(plo, b.deg), phi = std::max(phi, b.deg);
  Sparse sinv = identity_sparse(mod.dim());
  for (int r = 1; r < nn; ++r) sinv = linalg::multiply(sinv, mod.sigma);
  for (int d = lo - phi; d <= hi - plo; ++d) {
    std::vector<Sparse> basis = intertwiners(p, mod, d, 0, false);
    if (basis.empty()) continue;
    const int k = static_cast<int>(basis.size());
    // Coordinates: pick k pivot entries where the basis is in echelon form.
    Dense flat(k, mod.dim() * p.dim());
    for (int i = 0; i < k; ++i) {
      Dense di = basis[i].to_dense();
      std::copy(di.a.begin(), di.a.end(), flat.a.begin() + static_cast<long>(i) * mod.dim() * p.dim());
    }
    Dense ech = flat;
    std::vector<int> piv = linalg::rref(ech);
    // The operator is computed in the echelon basis; its traces do not depend on the basis.
    auto echelon_coords = [&](const Dense& m) {
      Vec c(k);
      for (int i = 0; i < k; ++i) c[i] = m.a[piv[i]];
      return c;
    };
    Dense op(k, k);  // column i: image of echelon row i in echelon coordinates
    for (int i = 0; i < k; ++i) {
      Dense fi(mod.dim(), p.dim());
      std::copy(ech.a.begin() + static_cast<long>(i) * mod.dim() * p.dim(),
                ech.a.begin() + static_cast<long>(i + 1) * mod.dim() * p.dim(), fi.a.begin());
      Sparse img = linalg::multiply(sinv, linalg::multiply(Sparse::from_dense(fi), p.sigma));
      Vec c = echelon_coords(img.to_dense());
      for (int r = 0; r < k; ++r) op(r, i) = c[r];
    }
    std::vector<u64> tr(nn, 0);
    Dense pw = Dense::identity(k);
    for (int r = 0; r < nn; ++r) {
      tr[r] = linalg::trace(pw);
      pw = linalg::multiply(pw, op);
    }
    out += LaurentScalar(lift_root_sum(tr, nn, k), d);
  }
  return out;
}

namespace {

// Acting algebra split as e_t A e_s by sequences and degree.
struct ActingAlgebra {
  struct SeqBlock {
    std::string seq;
    int off, dim;
  };
  std::vector<SeqBlock> sblocks;
  std::map<std::string, int> sindex;
  std::map<std::tuple<int, int, int>, std::vector<Dense>> parts;  // (t, s, d) -> basis
  long total = 0;
};

ActingAlgebra acting_algebra(const Module& mod, const CartanDatum& base, long cap) {
  ActingAlgebra alg;
  for (const auto& b : mod.blocks) {
    if (alg.sblocks.empty() || alg.sblocks.back().seq != b.seq) {
      alg.sindex[b.seq] = static_cast<int>(alg.sblocks.size());
      alg.sblocks.push_back({b.seq, b.off, 0});
    }
    alg.sblocks.back().dim += b.dim;
  }
  std::map<std::tuple<int, int, int>, RowSpace> spans;
  std::vector<std::tuple<int, int, int, Dense>> queue;
  auto push = [&](int t, int s, int d, Dense x) {
    Vec flat = x.a;
    auto& sp = spans[{t, s, d}];
    if (sp.insert(flat)) {
      alg.parts[{t, s, d}].push_back(x);
      queue.emplace_back(t, s, d, std::move(x));
      if (++alg.total > cap) throw SizeError("acting algebra exceeds the dense cap");
    }
  };
  for (int s = 0; s < static_cast<int>(alg.sblocks.size()); ++s) push(s, s, 0, Dense::identity(alg.sblocks[s].dim));
  const int gens = mod.m == 0 ? 0 : 2 * mod.m - 1;
  while (!queue.empty()) {
    auto [t, s, d, x] = std::move(queue.back());
    queue.pop_back();
    const auto& tb = alg.sblocks[t];
    for (int g = 0; g < gens; ++g) {
      if (!gen_present(mod, g)) continue;
      std::string t2 = tb.seq;
      int dg;
      auto col = [&](int p) { return static_cast<unsigned char>(tb.seq[p]); };
      if (g < mod.m) {
        dg = base.dot[col(g)][col(g)];
      } else {
        int k = g - mod.m;
        std::swap(t2[k], t2[k + 1]);
        dg = -base.dot[col(k)][col(k + 1)];
      }
      auto it = alg.sindex.find(t2);
      if (it == alg.sindex.end()) continue;
      const auto& tb2 = alg.sblocks[it->second];
      const Sparse& gm = detail::gen_matrix(mod, g);
      Dense y(tb2.dim, x.cols);
      bool nz = false;
      for (int c = 0; c < tb.dim; ++c)
        for (auto [r, v] : column(gm, tb.off + c)) {
          int rr = static_cast<int>(r) - tb2.off;
          for (int j = 0; j < x.cols; ++j)
            if (x(c, j)) {
              y(rr, j) = Fp::add(y(rr, j), Fp::mul(v, x(c, j)));
              nz = true;
            }
        }
      if (nz) push(it->second, s, d + dg, std::move(y));
    }
  }
  return alg;
}

// Radical of the acting algebra, as lists of matrices per (t, s, d).
std::map<std::tuple<int, int, int>, std::vector<Dense>> radical(const ActingAlgebra& alg) {
  std::map<std::tuple<int, int, int>, std::vector<Dense>> rad;
  for (const auto& [key, xs] : alg.parts) {
    auto [t, s, d] = key;
    auto it = alg.parts.find({s, t, -d});
    if (it == alg.parts.end()) {
      rad[key] = xs;
      continue;
    }
    const auto& ys = it->second;
    Dense gram(static_cast<int>(ys.size()), static_cast<int>(xs.size()));
    for (size_t i = 0; i < xs.size(); ++i)
      for (size_t j = 0; j < ys.size(); ++j) {
        u64 tr = 0;
        for (int a = 0; a < xs[i].rows; ++a)
          for (int b = 0; b < xs[i].cols; ++b)
            if (xs[i](a, b) && ys[j](b, a)) tr = Fp::add(tr, Fp::mul(xs[i](a, b), ys[j](b, a)));
        gram(static_cast<int>(j), static_cast<int>(i)) = tr;
      }
    Dense ns = linalg::nullspace(gram);
    for (int r = 0; r < ns.rows; ++r) {
      Dense z(xs[0].rows, xs[0].cols);
      for (size_t i = 0; i < xs.size(); ++i)
        if (ns(r, static_cast<int>(i)))
          for (size_t e = 0; e < z.a.size(); ++e) z.a[e] = Fp::add(z.a[e], Fp::mul(ns(r, static_cast<int>(i)), xs[i].a[e]));
      rad[key].push_back(std::move(z));
    }
  }
  return rad;
}

}  // namespace

Module ModCat::head(const Module& mod) const {
  if (mod.dim() > dense_cap) throw SizeError("module too large for the radical computation");
  ActingAlgebra alg = acting_algebra(mod, fd_.base, static_cast<long>(dense_cap) * dense_cap);
  std::vector<SVec> seeds;
  for (const auto& [key, xs] : radical(alg)) {
    auto [t, s, d] = key;
    const auto& tb = alg.sblocks[t];
    for (const Dense& x : xs)
      for (int c = 0; c < x.cols; ++c) {
        SVec v;
        for (int r = 0; r < x.rows; ++r)
          if (x(r, c)) v.emplace_back(tb.off + r, x(r, c));
        if (!v.empty()) seeds.push_back(std::move(v));
      }
  }
  return quotient(mod, seeds);
}

Module ModCat::socle(const Module& mod) const {
  if (mod.dim() > dense_cap) throw SizeError("module too large for the radical computation");
  ActingAlgebra alg = acting_algebra(mod, fd_.base, static_cast<long>(dense_cap) * dense_cap);
  auto rad = radical(alg);
  std::vector<SVec> seeds;
  for (size_t bi = 0; bi < mod.blocks.size(); ++bi) {
    const ModBlock& b = mod.blocks[bi];
    int s = alg.sindex.at(b.seq);
    int local0 = b.off - alg.sblocks[s].off;
    std::vector<Vec> rows;
    for (const auto& [key, xs] : rad) {
      if (std::get<1>(key) != s) continue;
      for (const Dense& x : xs)
        for (int r = 0; r < x.rows; ++r) {
          Vec row(b.dim);
          bool nz = false;
          for (int c = 0; c < b.dim; ++c)
            if ((row[c] = x(r, local0 + c))) nz = true;
          if (nz) rows.push_back(std::move(row));
        }
    }
    Dense sys(static_cast<int>(rows.size()), b.dim);
    for (size_t r = 0; r < rows.size(); ++r) std::copy(rows[r].begin(), rows[r].end(), sys.a.begin() + static_cast<long>(r) * b.dim);
    Dense ns = rows.empty() ? Dense::identity(b.dim) : linalg::nullspace(sys);
    for (int k = 0; k < ns.rows; ++k) {
      SVec v;
      for (int c = 0; c < b.dim; ++c)
        if (ns(k, c)) v.emplace_back(b.off + c, ns(k, c));
      seeds.push_back(std::move(v));
    }
  }
  return generated_submodule(mod, seeds);
}

bool ModCat::is_simple(const Module& mod) const {
  if (mod.dim() == 0) return false;
  if (mod.dim() > dense_cap) throw SizeError("module too large for the simplicity test");
  const long n = mod.dim();
  try {
    ActingAlgebra alg = acting_algebra(mod, fd_.base, n * n);
    return alg.total == n * n;
  } catch (const SizeError&) {
    return false;
  }
}

std::vector<Module> ModCat::equivariant_structures(const Module& l) const {
  const int nn = fd_.n();
  if (!is_simple(l)) throw DomainError("equivariant structures need a simple module");
  for (int t = 1; t <= nn; ++t) {
    if (nn % t) continue;
    // phi: block s -> block a^t(s), commuting with y and tau
    std::vector<Sparse> phis = intertwiners(l, l, 0, t, false);
    if (phis.empty()) continue;
    if (phis.size() > 1) throw GroundFieldError("endomorphisms of the simple module are not scalars");
    Sparse phi = phis[0];
    // phi^{n/t} = c id
    Sparse pw = identity_sparse(l.dim());
    for (int r = 0; r < nn / t; ++r) pw = linalg::multiply(pw, phi);
    u64 c = column(pw, 0).empty() ? 0 : column(pw, 0)[0].second;
    u64 lambda = Fp::inv(nth_root(c, nn / t));
    phi = scaled(phi, lambda);
    // M = L + a*L + ... + (a*)^{t-1} L; sigma shifts summands, closing with phi.
    Module sum = l;
    Module cur = l;
    for (int k = 1; k < t; ++k) {
      cur = pullback(cur);
      sum = direct_sum(sum, cur);
    }
    const int dl = l.dim();
    std::vector<Module> out;
    u64 root = Fp::root_of_unity(nn);
    u64 z = 1;
    for (int choice = 0; choice < nn / t; ++choice, z = Fp::mul(z, root)) {
      Module m = sum;
      Sparse sg;
      sg.rows = m.dim();
      // Columns follow m's block-sorted order; map via summand positions.
      std::vector<std::vector<std::pair<std::uint32_t, u64>>> cols(m.dim());
      // Summands are interleaved by block; locate each summand vector by
      // (seq, deg) in the order direct_sum places them.
      {
        // Rebuild positions: summand k, local x -> index in sum.
        std::vector<Module> summands{l};
        for (int k = 1; k < t; ++k) summands.push_back(pullback(summands.back()));
        std::map<std::pair<std::string, int>, int> cursor;
        std::vector<std::vector<int>> pos(t, std::vector<int>(dl));
        for (int k = 0; k < t; ++k)
          for (int x = 0; x < dl; ++x) {
            const ModBlock& b = summands[k].blocks[summands[k].block_of[x]];
            int bi = m.find_block(b.seq, b.deg);
            pos[k][x] = m.blocks[bi].off + cursor[{b.seq, b.deg}]++;
          }
        for (int k = 0; k < t; ++k)
          for (int x = 0; x < dl; ++x) {
            if (k + 1 < t) {
              cols[pos[k][x]].emplace_back(pos[k + 1][x], z);
            } else {
              for (auto [r, v] : column(phi, x)) cols[pos[k][x]].emplace_back(pos[0][r], Fp::mul(v, z));
            }
          }
      }
      for (auto& col : cols) sg.push_column(col);
      m.sigma = sg;
      out.push_back(std::move(m));
    }
    return out;
  }
  throw DomainError("no power of the automorphism fixes the module");
}

ModCat::TracelessWitness ModCat::traceless_decompose(const Module& mod) const {
  TracelessWitness w;
  const int nn = fd_.n();
  if (mod.dim() == 0) return w;
  for (int t = 2; t <= nn; ++t) {
    if (nn % t || mod.dim() % t) continue;
    for (int x = 0; x < mod.dim(); ++x) {
      SVec seed{{static_cast<std::uint32_t>(x), 1}};
      int du = span_dim(mod, {seed}, false);
      if (du * t != mod.dim()) continue;
      // translates sigma^k U must be independent and sigma^t U = U
      std::vector<SVec> all{seed};
      SVec cur = seed;
      for (int k = 1; k < t; ++k) {
        cur = mat_apply(mod.sigma, cur);
        all.push_back(cur);
      }
      if (span_dim(mod, all, false) != mod.dim()) continue;
      SVec back = mat_apply(mod.sigma, cur);
      if (span_dim(mod, {seed, back}, false) != du) continue;
      w.traceless = true;
      w.period = t;
      detail::BlockSpan span(mod, false);
      span.add_and_close({seed}, {});
      w.summand = span.as_module();
      return w;
    }
  }
  return w;
}

}  // namespace klrfold
