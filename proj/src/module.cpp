#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>

#include "klrfold/errors.hpp"
#include "klrfold/modcat.hpp"
#include "module_internal.hpp"

namespace klrfold {

using linalg::Sparse;
using u64 = std::uint64_t;

// ---------------------------------------------------------------------------
// Sparse vectors and scalars

SVec column(const Sparse& s, int c) {
  SVec v;
  v.reserve(s.colptr[c + 1] - s.colptr[c]);
  for (auto k = s.colptr[c]; k < s.colptr[c + 1]; ++k) v.emplace_back(s.row[k], s.val[k]);
  return v;
}

void svec_axpy(SVec& acc, const SVec& x, u64 c) {
  if (c == 0 || x.empty()) return;
  SVec out;
  out.reserve(acc.size() + x.size());
  size_t i = 0, j = 0;
  while (i < acc.size() || j < x.size()) {
    if (j == x.size() || (i < acc.size() && acc[i].first < x[j].first)) {
      out.push_back(acc[i++]);
    } else if (i == acc.size() || x[j].first < acc[i].first) {
      out.emplace_back(x[j].first, Fp::mul(c, x[j].second));
      ++j;
    } else {
      u64 v = Fp::add(acc[i].second, Fp::mul(c, x[j].second));
      if (v) out.emplace_back(acc[i].first, v);
      ++i;
      ++j;
    }
  }
  acc.swap(out);
}

SVec mat_apply(const Sparse& s, const SVec& v) {
  if (v.size() == 1) {
    SVec out;
    for (auto k = s.colptr[v[0].first]; k < s.colptr[v[0].first + 1]; ++k)
      out.emplace_back(s.row[k], Fp::mul(s.val[k], v[0].second));
    return out;
  }
  std::map<std::uint32_t, u64> acc;
  for (auto [c, x] : v)
    for (auto k = s.colptr[c]; k < s.colptr[c + 1]; ++k) {
      u64& slot = acc[s.row[k]];
      slot = Fp::add(slot, Fp::mul(s.val[k], x));
    }
  SVec out;
  for (auto [r, x] : acc)
    if (x) out.emplace_back(r, x);
  return out;
}

u64 to_fp(const CycloScalar& c) {
  const auto& co = c.coeffs();
  u64 w = Fp::root_of_unity(c.order());
  u64 acc = 0, pw = 1;
  for (const Int& a : co) {
    if (!a.fits_slong_p()) throw PrecisionError("coefficient too large for the prime field");
    acc = Fp::add(acc, Fp::mul(Fp::from_long(a.get_si()), pw));
    pw = Fp::mul(pw, w);
  }
  return acc;
}

CycloScalar lift_root_sum(const std::vector<u64>& tr, int n, long bound) {
  u64 w = Fp::root_of_unity(n);
  u64 ninv = Fp::inv(static_cast<u64>(n));
  CycloScalar out(n);
  for (int k = 0; k < n; ++k) {
    u64 acc = 0;
    for (int r = 0; r < n; ++r) acc = Fp::add(acc, Fp::mul(tr[r], Fp::pow(w, static_cast<u64>((n - (k * r) % n) % n))));
    long mk = Fp::to_long(Fp::mul(acc, ninv));
    if (mk < 0 || mk > bound) throw PrecisionError("twisted trace does not lift to a sum of roots of unity");
    if (mk) out += CycloScalar(1, mk) * CycloScalar::zeta_power(n, k);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Module basics

bool Module::has_tau(int k) const {
  if (k < 0 || k >= m - 1) return false;
  int acc = 0;
  for (int p : parts) {
    acc += p;
    if (acc == k + 1) return false;
    if (acc > k + 1) return true;
  }
  return true;
}

int Module::find_block(const std::string& seq, int deg) const {
  auto it = std::lower_bound(blocks.begin(), blocks.end(), std::make_pair(seq, deg), [](const ModBlock& b, const auto& key) {
    return std::make_pair(b.seq, b.deg) < key;
  });
  if (it == blocks.end() || it->seq != seq || it->deg != deg) return -1;
  return static_cast<int>(it - blocks.begin());
}

Weight Module::weight(int rank) const {
  Weight w(rank, 0);
  if (!blocks.empty())
    for (char c : blocks[0].seq) ++w[static_cast<unsigned char>(c)];
  return w;
}

namespace detail {

int RawModule::gen_count() const { return m == 0 ? 1 : 2 * m; }

int RawModule::add_basis(const std::string& s, int d) {
  seq.push_back(s);
  deg.push_back(d);
  for (auto& g : gens) g.emplace_back();
  return static_cast<int>(seq.size()) - 1;
}

RawModule::RawModule(int n_, int m_, std::vector<int> parts_) : n(n_), m(m_), parts(std::move(parts_)) {
  gens.resize(gen_count());
}

Module finalize(RawModule&& raw) {
  const int N = static_cast<int>(raw.seq.size());
  std::vector<int> order(N);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (raw.seq[a] != raw.seq[b]) return raw.seq[a] < raw.seq[b];
    return raw.deg[a] < raw.deg[b];
  });
  std::vector<std::uint32_t> pos(N);
  for (int i = 0; i < N; ++i) pos[order[i]] = static_cast<std::uint32_t>(i);
  Module mod;
  mod.n = raw.n;
  mod.m = raw.m;
  mod.parts = raw.parts;
  mod.trunc = raw.trunc;
  mod.block_of.resize(N);
  for (int i = 0; i < N; ++i) {
    int o = order[i];
    if (mod.blocks.empty() || mod.blocks.back().seq != raw.seq[o] || mod.blocks.back().deg != raw.deg[o])
      mod.blocks.push_back({raw.seq[o], raw.deg[o], i, 0});
    ++mod.blocks.back().dim;
    mod.block_of[i] = static_cast<int>(mod.blocks.size()) - 1;
  }
  auto build = [&](const std::vector<SVec>& cols) {
    Sparse s;
    s.rows = N;
    std::vector<std::pair<std::uint32_t, u64>> e;
    for (int i = 0; i < N; ++i) {
      e.clear();
      for (auto [r, v] : cols[order[i]]) e.emplace_back(pos[r], v);
      s.push_column(e);
    }
    return s;
  };
  for (int l = 0; l < raw.m; ++l) mod.y.push_back(build(raw.gens[l]));
  for (int k = 0; k + 1 < raw.m; ++k) mod.tau.push_back(build(raw.gens[raw.m + k]));
  mod.sigma = build(raw.gens[raw.gen_count() - 1]);
  return mod;
}

RawModule to_raw(const Module& mod) {
  RawModule raw(mod.n, mod.m, mod.parts);
  raw.trunc = mod.trunc;
  for (int i = 0; i < mod.dim(); ++i) {
    const ModBlock& b = mod.blocks[mod.block_of[i]];
    raw.add_basis(b.seq, b.deg);
  }
  for (int g = 0; g < raw.gen_count(); ++g) {
    const Sparse& s = gen_matrix(mod, g);
    for (int c = 0; c < mod.dim(); ++c) raw.gens[g][c] = column(s, c);
  }
  return raw;
}

const Sparse& gen_matrix(const Module& mod, int g) {
  if (g < mod.m) return mod.y[g];
  if (g < 2 * mod.m - 1) return mod.tau[g - mod.m];
  return mod.sigma;
}

int sigma_gen(const Module& mod) { return mod.m == 0 ? 0 : 2 * mod.m - 1; }

SVec sigma_power(const Module& mod, SVec v, int r) {
  for (int i = 0; i < r; ++i) v = mat_apply(mod.sigma, v);
  return v;
}

// Echelon span per block, kept in reduced row echelon form.
BlockSpan::BlockSpan(const Module& mod, bool with_sigma)
    : mod_(&mod), rows_(mod.blocks.size()), piv_(mod.blocks.size()), with_sigma_(with_sigma) {}

bool BlockSpan::insert(int b, linalg::Vec v) {
  reduce(b, v);
  int q = -1;
  for (int c = 0; c < static_cast<int>(v.size()); ++c)
    if (v[c]) {
      q = c;
      break;
    }
  if (q < 0) return false;
  u64 inv = Fp::inv(v[q]);
  for (auto& x : v) x = Fp::mul(x, inv);
  for (auto& r : rows_[b]) {
    u64 f = r[q];
    if (!f) continue;
    for (size_t c = 0; c < r.size(); ++c)
      if (v[c]) r[c] = Fp::sub(r[c], Fp::mul(f, v[c]));
  }
  rows_[b].push_back(std::move(v));
  piv_[b].push_back(q);
  ++total_;
  return true;
}

void BlockSpan::reduce(int b, linalg::Vec& v) const {
  for (size_t r = 0; r < rows_[b].size(); ++r) {
    u64 f = v[piv_[b][r]];
    if (!f) continue;
    const auto& row = rows_[b][r];
    for (size_t c = 0; c < row.size(); ++c)
      if (row[c]) v[c] = Fp::sub(v[c], Fp::mul(f, row[c]));
  }
}

linalg::Vec BlockSpan::local(int b, const SVec& v) const {
  const ModBlock& blk = mod_->blocks[b];
  linalg::Vec out(blk.dim, 0);
  for (auto [r, x] : v) {
    if (mod_->block_of[r] != b) throw DomainError("vector is not homogeneous");
    out[r - blk.off] = x;
  }
  return out;
}

SVec BlockSpan::global(int b, const linalg::Vec& v) const {
  SVec out;
  int off = mod_->blocks[b].off;
  for (size_t c = 0; c < v.size(); ++c)
    if (v[c]) out.emplace_back(static_cast<std::uint32_t>(off + c), v[c]);
  return out;
}

void BlockSpan::close() {
  std::deque<std::pair<int, size_t>> queue;
  for (size_t b = 0; b < rows_.size(); ++b)
    for (size_t r = 0; r < rows_[b].size(); ++r) queue.emplace_back(static_cast<int>(b), r);
  close_from(queue);
}

void BlockSpan::add_and_close(const std::vector<SVec>& seeds, const std::vector<int>& whole) {
  std::deque<std::pair<int, size_t>> queue;
  auto push = [&](int b, linalg::Vec v) {
    if (insert(b, std::move(v))) queue.emplace_back(b, rows_[b].size() - 1);
  };
  for (int b : whole) {
    int d = mod_->blocks[b].dim;
    for (int c = 0; c < d; ++c) {
      linalg::Vec v(d, 0);
      v[c] = 1;
      push(b, std::move(v));
    }
  }
  for (const SVec& s : seeds) {
    std::map<int, SVec> parts;
    for (auto e : s) parts[mod_->block_of[e.first]].push_back(e);
    for (auto& [b, p] : parts) push(b, local(b, p));
  }
  close_from(queue);
}

void BlockSpan::close_from(std::deque<std::pair<int, size_t>>& queue) {
  const int gens = mod_->m == 0 ? 1 : 2 * mod_->m;
  // Rows change under later insertions but their span only grows, so the
  // images of the vectors as inserted suffice; keep snapshots.
  std::vector<std::pair<int, SVec>> pending;
  for (auto [b, r] : queue) pending.emplace_back(b, global(b, rows_[b][r]));
  queue.clear();
  while (!pending.empty()) {
    auto [b, v] = std::move(pending.back());
    pending.pop_back();
    for (int g = 0; g < gens; ++g) {
      if (g >= mod_->m && g < 2 * mod_->m - 1 && !mod_->has_tau(g - mod_->m)) continue;
      if (g == gens - 1 && !with_sigma_) continue;
      SVec img = mat_apply(gen_matrix(*mod_, g), v);
      if (img.empty()) continue;
      int tb = mod_->block_of[img[0].first];
      linalg::Vec loc = local(tb, img);
      if (insert(tb, loc)) pending.emplace_back(tb, global(tb, rows_[tb].back()));
    }
  }
}

linalg::Vec BlockSpan::coords(int b, const linalg::Vec& v) const {
  linalg::Vec out(rows_[b].size());
  for (size_t r = 0; r < rows_[b].size(); ++r) out[r] = v[piv_[b][r]];
  return out;
}

Module BlockSpan::as_module() const {
  const Module& mod = *mod_;
  RawModule raw(mod.n, mod.m, mod.parts);
  raw.trunc = mod.trunc;
  std::vector<int> first(rows_.size());
  for (size_t b = 0; b < rows_.size(); ++b) {
    first[b] = static_cast<int>(raw.seq.size());
    for (size_t r = 0; r < rows_[b].size(); ++r) raw.add_basis(mod.blocks[b].seq, mod.blocks[b].deg);
  }
  for (int g = 0; g < raw.gen_count(); ++g) {
    if (g >= mod.m && g < 2 * mod.m - 1 && !mod.has_tau(g - mod.m)) continue;
    const Sparse& mat = gen_matrix(mod, g);
    for (size_t b = 0; b < rows_.size(); ++b)
      for (size_t r = 0; r < rows_[b].size(); ++r) {
        SVec img = mat_apply(mat, global(static_cast<int>(b), rows_[b][r]));
        if (img.empty()) continue;
        int tb = mod.block_of[img[0].first];
        linalg::Vec loc = local(tb, img);
        linalg::Vec co = coords(tb, loc);
        SVec col;
        for (size_t k = 0; k < co.size(); ++k)
          if (co[k]) col.emplace_back(first[tb] + k, co[k]);
        raw.gens[g][first[b] + r] = col;
      }
  }
  return finalize(std::move(raw));
}

Module BlockSpan::complement_quotient() const {
  const Module& mod = *mod_;
  RawModule raw(mod.n, mod.m, mod.parts);
  raw.trunc = mod.trunc;
  // Quotient basis: standard vectors at non-pivot columns of each block.
  std::vector<std::vector<int>> free(rows_.size());
  std::vector<std::vector<int>> index(rows_.size());
  for (size_t b = 0; b < rows_.size(); ++b) {
    std::vector<char> is_piv(mod.blocks[b].dim, 0);
    for (int p : piv_[b]) is_piv[p] = 1;
    index[b].assign(mod.blocks[b].dim, -1);
    for (int c = 0; c < mod.blocks[b].dim; ++c)
      if (!is_piv[c]) {
        index[b][c] = raw.add_basis(mod.blocks[b].seq, mod.blocks[b].deg);
        free[b].push_back(c);
      }
  }
  for (int g = 0; g < raw.gen_count(); ++g) {
    if (g >= mod.m && g < 2 * mod.m - 1 && !mod.has_tau(g - mod.m)) continue;
    const Sparse& mat = gen_matrix(mod, g);
    for (size_t b = 0; b < rows_.size(); ++b)
      for (int c : free[b]) {
        SVec img = column(mat, mod.blocks[b].off + c);
        if (img.empty()) continue;
        int tb = mod.block_of[img[0].first];
        linalg::Vec loc = local(tb, img);
        reduce(tb, loc);
        SVec col;
        for (int cc : free[tb])
          if (loc[cc]) col.emplace_back(index[tb][cc], loc[cc]);
        raw.gens[g][index[b][c]] = col;
      }
  }
  return finalize(std::move(raw));
}

}  // namespace detail

using detail::RawModule;

// ---------------------------------------------------------------------------
// Constructions

ModCat::ModCat(const FoldedDatum& fd) : fd_(fd), alg_(fd.base, fd.aut) {}

std::string ModCat::orbit_seq(int j) const {
  if (j < 0 || j >= static_cast<int>(fd_.orbits.size())) throw DomainError("orbit index out of range");
  std::string s;
  for (int i : fd_.orbits[j]) s.push_back(static_cast<char>(i));
  return s;
}

namespace detail {

std::string apply_aut(const DiagramAut& a, const std::string& s) {
  std::string t = s;
  for (auto& c : t) c = static_cast<char>(a.perm[static_cast<unsigned char>(c)]);
  return t;
}

// pi with pi.i = a(i) on a sorted orbit sequence i
Perm rotation(const DiagramAut& a, const std::string& i) {
  int t = static_cast<int>(i.size());
  Perm pinv(t, 0);
  for (int p = 0; p < t; ++p) {
    char target = static_cast<char>(a.perm[static_cast<unsigned char>(i[p])]);
    pinv[p] = static_cast<char>(i.find(target));
  }
  return perm::inverse(pinv);
}

}  // namespace detail

using detail::apply_aut;
using detail::rotation;

Module ModCat::unit() const {
  RawModule raw(n(), 0, {});
  raw.add_basis("", 0);
  raw.gens[0][0] = {{0, 1}};
  return detail::finalize(std::move(raw));
}

Module ModCat::one_colour_simple(int j) const { return one_colour_projective(j, 0); }

Module ModCat::one_colour_projective(int j, int trunc) const {
  if (trunc < 0) throw DomainError("truncation bound must be nonnegative");
  std::string i = orbit_seq(j);
  const int t = static_cast<int>(i.size());
  const int ydeg = fd_.base.dot[static_cast<unsigned char>(i[0])][static_cast<unsigned char>(i[0])];
  std::vector<std::string> betas;
  std::string beta(t, 0);
  std::function<void(int, int)> rec = [&](int p, int left) {
    if (p == t) {
      betas.push_back(beta);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      beta[p] = static_cast<char>(e);
      rec(p + 1, left - e);
    }
  };
  rec(0, trunc);
  std::vector<Perm> perms = perm::all(t);
  RawModule raw(n(), t, {t});
  raw.trunc = trunc;
  std::map<std::pair<Perm, std::string>, int> idx;
  for (const Perm& w : perms)
    for (const auto& b : betas) {
      int dsum = 0;
      for (char e : b) dsum += e;
      idx[{w, b}] = raw.add_basis(perm::act(w, i), dsum * ydeg);
    }
  Perm pi = rotation(fd_.aut, i);
  Perm pinv = perm::inverse(pi);
  for (const auto& [key, c] : idx) {
    const auto& [w, b] = key;
    int dsum = 0;
    for (char e : b) dsum += e;
    Perm winv = perm::inverse(w);
    for (int l = 0; l < t; ++l) {
      if (dsum == trunc) continue;
      std::string b2 = b;
      ++b2[static_cast<unsigned char>(winv[l])];
      raw.gens[l][c] = {{static_cast<std::uint32_t>(idx.at({w, b2})), 1}};
    }
    for (int k = 0; k + 1 < t; ++k) raw.gens[t + k][c] = {{static_cast<std::uint32_t>(idx.at({perm::left_mul(k, w), b})), 1}};
    std::string b3(t, 0);
    for (int l = 0; l < t; ++l) b3[static_cast<unsigned char>(pinv[l])] = b[l];
    raw.gens[raw.gen_count() - 1][c] = {{static_cast<std::uint32_t>(idx.at({perm::compose(w, pi), b3})), 1}};
  }
  return detail::finalize(std::move(raw));
}

Module ModCat::tensor(const Module& a, const Module& b) const {
  std::vector<int> parts = a.parts;
  parts.insert(parts.end(), b.parts.begin(), b.parts.end());
  RawModule raw(n(), a.m + b.m, parts);
  raw.trunc = std::max(a.trunc, b.trunc);
  const int da = a.dim(), db = b.dim();
  for (int x = 0; x < da; ++x)
    for (int z = 0; z < db; ++z) {
      const ModBlock& ba = a.blocks[a.block_of[x]];
      const ModBlock& bb = b.blocks[b.block_of[z]];
      raw.add_basis(ba.seq + bb.seq, ba.deg + bb.deg);
    }
  auto left = [&](const Sparse& s, int x, int z) {
    SVec out;
    for (auto [r, v] : column(s, x)) out.emplace_back(r * db + z, v);
    return out;
  };
  auto right = [&](const Sparse& s, int x, int z) {
    SVec out;
    for (auto [r, v] : column(s, z)) out.emplace_back(x * db + r, v);
    return out;
  };
  for (int x = 0; x < da; ++x)
    for (int z = 0; z < db; ++z) {
      int c = x * db + z;
      for (int l = 0; l < a.m; ++l) raw.gens[l][c] = left(a.y[l], x, z);
      for (int l = 0; l < b.m; ++l) raw.gens[a.m + l][c] = right(b.y[l], x, z);
      for (int k = 0; k + 1 < a.m; ++k) raw.gens[raw.m + k][c] = left(a.tau[k], x, z);
      for (int k = 0; k + 1 < b.m; ++k) raw.gens[raw.m + a.m + k][c] = right(b.tau[k], x, z);
      SVec sg;
      for (auto [r1, v1] : column(a.sigma, x))
        for (auto [r2, v2] : column(b.sigma, z)) sg.emplace_back(r1 * db + r2, Fp::mul(v1, v2));
      std::sort(sg.begin(), sg.end());
      raw.gens[raw.gen_count() - 1][c] = sg;
    }
  return detail::finalize(std::move(raw));
}

std::vector<Perm> block_shuffles(const std::vector<int>& parts) {
  std::string labels;
  for (size_t b = 0; b < parts.size(); ++b) labels.append(parts[b], static_cast<char>(b));
  int m = static_cast<int>(labels.size());
  std::vector<Perm> out;
  do {
    // value v goes to block labels[v]; positions of each block filled in order
    std::vector<int> next(parts.size(), 0), start(parts.size(), 0);
    for (size_t b = 1; b < parts.size(); ++b) start[b] = start[b - 1] + parts[b - 1];
    Perm w(m, 0);
    for (int v = 0; v < m; ++v) {
      int b = labels[v];
      w[start[b] + next[b]++] = static_cast<char>(v);
    }
    out.push_back(w);
  } while (std::next_permutation(labels.begin(), labels.end()));
  return out;
}

namespace {

Perm min_rep(const Perm& z, const std::vector<int>& parts) {
  Perm w = z;
  int off = 0;
  for (int p : parts) {
    std::sort(w.begin() + off, w.begin() + off + p);
    off += p;
  }
  return w;
}

std::string parts_key(const std::vector<int>& parts) {
  std::string k;
  for (int p : parts) k.push_back(static_cast<char>(p));
  return k;
}

}  // namespace

const std::vector<ModCat::SplitTerm>& ModCat::coset_split(const Perm& z, const std::string& s, const std::vector<int>& parts) {
  std::string key = parts_key(parts) + '|' + z + '|' + s;
  auto it = split_cache_.find(key);
  if (it != split_cache_.end()) return it->second;
  const int m = static_cast<int>(z.size());
  std::map<Perm, Lin> acc;
  Perm w = min_rep(z, parts);
  Perm v = perm::compose(perm::inverse(w), z);
  lin_add(acc[w], NormalWord{v, std::string(m, 0), s}, CycloScalar(1, 1L));
  Word a = perm::canonical_word(w) + perm::canonical_word(v);
  Word c = perm::canonical_word(z);
  if (a != c) {
    Lin d = alg_.word_difference(c, a, s);
    for (const auto& [nw, coef] : d) {
      std::vector<SplitTerm> sub = coset_split(nw.z, s, parts);  // copy: cache may rehash
      for (const SplitTerm& t : sub)
        for (const auto& [pw, pc] : t.parab) {
          NormalWord moved = pw;
          for (int l = 0; l < m; ++l) moved.beta[l] = static_cast<char>(moved.beta[l] + nw.beta[l]);
          CycloScalar cc = coef;
          lin_add(acc[t.rep], moved, cc * CycloScalar(1, Fp::to_long(pc)));
        }
    }
  }
  std::vector<SplitTerm> out;
  for (auto& [rep, lin] : acc) {
    if (lin.empty()) continue;
    SplitTerm t{rep, {}};
    for (auto& [nw, coef] : lin) {
      u64 f = to_fp(coef);
      if (f) t.parab.emplace_back(nw, f);
    }
    if (!t.parab.empty()) out.push_back(std::move(t));
  }
  return split_cache_[key] = std::move(out);
}

Module ModCat::induce(const Module& t) {
  if (t.parts.size() <= 1) {
    Module out = t;
    out.parts = {t.m};
    if (t.m == 0) out.parts.clear();
    return out;
  }
  const int m = t.m, dt = t.dim();
  std::vector<Perm> reps = block_shuffles(t.parts);
  std::unordered_map<Perm, int> rep_idx;
  for (size_t r = 0; r < reps.size(); ++r) rep_idx[reps[r]] = static_cast<int>(r);
  RawModule raw(n(), m, {m});
  raw.trunc = t.trunc;
  for (const Perm& w : reps) {
    for (int x = 0; x < dt; ++x) {
      const ModBlock& b = t.blocks[t.block_of[x]];
      raw.add_basis(perm::act(w, b.seq), b.deg + alg_.degree(NormalWord{w, std::string(m, 0), b.seq}));
    }
  }
  // Parabolic word tau_{Can v} y^beta acting on a basis vector of t.
  std::unordered_map<Perm, Word> canon;
  auto act_parab = [&](const NormalWord& pw, int x) {
    SVec v{{static_cast<std::uint32_t>(x), 1}};
    for (int l = 0; l < m && !v.empty(); ++l)
      for (int e = 0; e < pw.beta[l] && !v.empty(); ++e) v = mat_apply(t.y[l], v);
    auto it = canon.find(pw.z);
    if (it == canon.end()) it = canon.emplace(pw.z, perm::canonical_word(pw.z)).first;
    const Word& cw = it->second;
    for (auto k = cw.rbegin(); k != cw.rend() && !v.empty(); ++k) v = mat_apply(t.tau[static_cast<unsigned char>(*k)], v);
    return v;
  };
  const int gens = 2 * m - 1;
  for (size_t r = 0; r < reps.size(); ++r)
    for (int x = 0; x < dt; ++x) {
      const std::string& s = t.blocks[t.block_of[x]].seq;
      const int col = static_cast<int>(r) * dt + x;
      for (int g = 0; g < gens; ++g) {
        const Lin& img = g < m ? alg_.left_y(g, reps[r], s) : alg_.left_tau(g - m, reps[r], s);
        std::map<std::uint32_t, u64> acc;
        for (const auto& [nw, coef] : img) {
          u64 f = to_fp(coef);
          if (!f) continue;
          for (const SplitTerm& st : coset_split(nw.z, s, t.parts)) {
            std::uint32_t base = static_cast<std::uint32_t>(rep_idx.at(st.rep) * dt);
            for (const auto& [pw, pc] : st.parab) {
              NormalWord full = pw;
              for (int l = 0; l < m; ++l) full.beta[l] = static_cast<char>(full.beta[l] + nw.beta[l]);
              u64 cf = Fp::mul(f, pc);
              for (auto [xr, xv] : act_parab(full, x)) {
                u64& slot = acc[base + xr];
                slot = Fp::add(slot, Fp::mul(cf, xv));
              }
            }
          }
        }
        SVec out;
        for (auto [k, v] : acc)
          if (v) out.emplace_back(k, v);
        raw.gens[g][col] = std::move(out);
      }
      SVec sg;
      for (auto [xr, xv] : column(t.sigma, x)) sg.emplace_back(static_cast<std::uint32_t>(r * dt + xr), xv);
      raw.gens[gens][col] = sg;
    }
  return detail::finalize(std::move(raw));
}

Module ModCat::restrict(const Module& mod, const Weight& lambda) const {
  if (mod.parts.size() > 1) throw DomainError("restrict expects a module over a single algebra");
  int p = height(lambda);
  if (p > mod.m) throw DomainError("restriction weight exceeds the module weight");
  Weight al(lambda.size(), 0);
  for (size_t i = 0; i < lambda.size(); ++i) al[fd_.aut.perm[i]] = lambda[i];
  if (al != lambda) throw DomainError("restriction weight is not a-stable");
  std::vector<int> parts;
  if (p > 0) parts.push_back(p);
  if (mod.m - p > 0) parts.push_back(mod.m - p);
  RawModule raw(n(), mod.m, parts);
  raw.trunc = mod.trunc;
  std::vector<int> keep(mod.dim(), -1);
  for (int x = 0; x < mod.dim(); ++x) {
    const ModBlock& b = mod.blocks[mod.block_of[x]];
    Weight c(lambda.size(), 0);
    for (int q = 0; q < p; ++q) ++c[static_cast<unsigned char>(b.seq[q])];
    if (c == lambda) keep[x] = raw.add_basis(b.seq, b.deg);
  }
  auto remap = [&](const SVec& v) {
    SVec out;
    for (auto [r, x] : v) {
      if (keep[r] < 0) throw DomainError("restriction is not stable under the generators");
      out.emplace_back(keep[r], x);
    }
    return out;
  };
  for (int x = 0; x < mod.dim(); ++x) {
    if (keep[x] < 0) continue;
    for (int g = 0; g < raw.gen_count(); ++g) {
      if (p > 0 && p < mod.m && g == mod.m + p - 1) continue;  // the cut tau
      raw.gens[g][keep[x]] = remap(column(detail::gen_matrix(mod, g), x));
    }
  }
  return detail::finalize(std::move(raw));
}

Module ModCat::dualize(const Module& mod) const {
  RawModule raw(mod.n, mod.m, mod.parts);
  raw.trunc = mod.trunc;
  for (int x = 0; x < mod.dim(); ++x) {
    const ModBlock& b = mod.blocks[mod.block_of[x]];
    raw.add_basis(b.seq, -b.deg);
  }
  for (int g = 0; g + 1 < raw.gen_count(); ++g) {
    Sparse tr = detail::gen_matrix(mod, g).transpose();
    for (int x = 0; x < mod.dim(); ++x) raw.gens[g][x] = column(tr, x);
  }
  // sigma^{-1} = sigma^{n-1} by the cocycle condition
  Sparse sinv = Sparse::from_dense(linalg::Dense(0, 0));
  sinv.rows = mod.dim();
  for (int x = 0; x < mod.dim(); ++x) sinv.push_column({{static_cast<std::uint32_t>(x), 1}});
  for (int r = 1; r < mod.n; ++r) sinv = linalg::multiply(sinv, mod.sigma);
  Sparse st = sinv.transpose();
  for (int x = 0; x < mod.dim(); ++x) raw.gens[raw.gen_count() - 1][x] = column(st, x);
  return detail::finalize(std::move(raw));
}

Module ModCat::shift(const Module& mod, int d) const {
  Module out = mod;
  for (auto& b : out.blocks) b.deg += d;
  return out;
}

Module ModCat::twist(const Module& mod, int k) const {
  Module out = mod;
  u64 z = Fp::pow(Fp::root_of_unity(mod.n), static_cast<u64>(((k % mod.n) + mod.n) % mod.n));
  for (auto& v : out.sigma.val) v = Fp::mul(v, z);
  return out;
}

Module ModCat::direct_sum(const Module& a, const Module& b) const {
  if (a.m != b.m || a.parts != b.parts) throw DomainError("direct sum of modules over different algebras");
  RawModule ra = detail::to_raw(a), rb = detail::to_raw(b);
  const auto shiftv = static_cast<std::uint32_t>(a.dim());
  for (int x = 0; x < b.dim(); ++x) {
    ra.add_basis(rb.seq[x], rb.deg[x]);
    for (int g = 0; g < ra.gen_count(); ++g) {
      SVec v = rb.gens[g][x];
      for (auto& e : v) e.first += shiftv;
      ra.gens[g][a.dim() + x] = v;
    }
  }
  ra.trunc = std::max(a.trunc, b.trunc);
  return detail::finalize(std::move(ra));
}

Module ModCat::pullback(const Module& mod) const {
  RawModule raw = detail::to_raw(mod);
  for (auto& s : raw.seq) s = apply_aut(fd_.aut, s);
  return detail::finalize(std::move(raw));
}

Module ModCat::generated_submodule(const Module& mod, const std::vector<SVec>& seeds, const std::vector<int>& whole_blocks) const {
  if (whole_blocks.size() == mod.blocks.size() && seeds.empty()) return mod;
  detail::BlockSpan span(mod);
  span.add_and_close(seeds, whole_blocks);
  if (span.size() == mod.dim()) return mod;
  return span.as_module();
}

int ModCat::span_dim(const Module& mod, const std::vector<SVec>& seeds, bool with_sigma) const {
  detail::BlockSpan span(mod, with_sigma);
  span.add_and_close(seeds, {});
  return span.size();
}

Module ModCat::quotient(const Module& mod, const std::vector<SVec>& seeds) const {
  detail::BlockSpan span(mod);
  span.add_and_close(seeds, {});
  return span.complement_quotient();
}

// ---------------------------------------------------------------------------
// Invariants

CheckReport ModCat::check_relations(const Module& mod) const {
  CheckReport rep;
  const int m = mod.m;
  const CartanDatum& d = fd_.base;
  const QFamily& q = alg_.q();
  auto fail = [&](const std::string& what, int x) {
    if (rep.failures.size() < 20) rep.failures.push_back(what + " on basis vector " + std::to_string(x));
  };
  auto Y = [&](int l, const SVec& v) { return mat_apply(mod.y[l], v); };
  auto T = [&](int k, const SVec& v) { return mat_apply(mod.tau[k], v); };
  auto minus = [](SVec a, const SVec& b) {
    svec_axpy(a, b, Fp::neg(1));
    return a;
  };
  auto ypow = [&](SVec v, int l, int e) {
    for (int i = 0; i < e && !v.empty(); ++i) v = Y(l, v);
    return v;
  };
  for (int x = 0; x < mod.dim(); ++x) {
    const ModBlock& blk = mod.blocks[mod.block_of[x]];
    const std::string& s = blk.seq;
    SVec v{{static_cast<std::uint32_t>(x), 1}};
    auto col = [&](int c) { return static_cast<unsigned char>(s[c]); };
    // block targets and degrees
    auto expect = [&](const SVec& img, const std::string& seq, int deg, const char* what) {
      ++rep.checked;
      for (auto [r, val] : img) {
        const ModBlock& tb = mod.blocks[mod.block_of[r]];
        if (tb.seq != seq || tb.deg != deg) {
          fail(std::string(what) + " not homogeneous", x);
          return;
        }
      }
    };
    for (int l = 0; l < m; ++l) expect(Y(l, v), s, blk.deg + d.dot[col(l)][col(l)], "y");
    for (int k = 0; k + 1 < m; ++k) {
      if (!mod.has_tau(k)) continue;
      std::string t = s;
      std::swap(t[k], t[k + 1]);
      expect(T(k, v), t, blk.deg - d.dot[col(k)][col(k + 1)], "tau");
    }
    expect(mat_apply(mod.sigma, v), apply_aut(fd_.aut, s), blk.deg, "sigma");
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b) {
        ++rep.checked;
        if (Y(a, Y(b, v)) != Y(b, Y(a, v))) fail("y commute", x);
      }
    for (int k = 0; k + 1 < m; ++k) {
      if (!mod.has_tau(k)) continue;
      bool eq = s[k] == s[k + 1];
      for (int l = 0; l < m; ++l) {
        if (l == k || l == k + 1) continue;
        ++rep.checked;
        if (T(k, Y(l, v)) != Y(l, T(k, v))) fail("tau y far", x);
      }
      SVec r1 = minus(Y(k + 1, T(k, v)), T(k, Y(k, v)));
      SVec r2 = minus(Y(k, T(k, v)), T(k, Y(k + 1, v)));
      SVec e1 = eq ? v : SVec{}, e2 = eq ? SVec{{static_cast<std::uint32_t>(x), Fp::neg(1)}} : SVec{};
      rep.checked += 2;
      if (r1 != e1) fail("y_{k+1} tau_k", x);
      if (r2 != e2) fail("y_k tau_k", x);
      SVec qv;
      for (const auto& [ex, c] : q(col(k), col(k + 1))) svec_axpy(qv, ypow(ypow(v, k, ex.first), k + 1, ex.second), to_fp(c));
      ++rep.checked;
      if (T(k, T(k, v)) != qv) fail("quadratic", x);
      for (int l = k + 2; l + 1 < m; ++l) {
        if (!mod.has_tau(l)) continue;
        ++rep.checked;
        if (T(k, T(l, v)) != T(l, T(k, v))) fail("tau commute", x);
      }
      if (k + 2 < m && mod.has_tau(k + 1)) {
        SVec lhs = minus(T(k + 1, T(k, T(k + 1, v))), T(k, T(k + 1, T(k, v))));
        SVec dd;
        if (s[k] == s[k + 2])
          for (const auto& [ex, c] : q(col(k), col(k + 1))) {
            for (int e = 0; e < ex.first; ++e)
              svec_axpy(dd, ypow(ypow(ypow(v, k, e), k + 2, ex.first - 1 - e), k + 1, ex.second), to_fp(c));
          }
        ++rep.checked;
        if (lhs != dd) fail("braid", x);
      }
    }
  }
  return rep;
}

CheckReport ModCat::check_cocycle(const Module& mod) const {
  CheckReport rep;
  for (int x = 0; x < mod.dim(); ++x) {
    SVec v{{static_cast<std::uint32_t>(x), 1}};
    ++rep.checked;
    if (detail::sigma_power(mod, v, mod.n) != v) rep.failures.push_back("sigma^n != id at " + std::to_string(x));
    for (int g = 0; g + 1 < (mod.m == 0 ? 1 : 2 * mod.m); ++g) {
      if (g >= mod.m && !mod.has_tau(g - mod.m)) continue;
      const Sparse& mat = detail::gen_matrix(mod, g);
      ++rep.checked;
      if (mat_apply(mod.sigma, mat_apply(mat, v)) != mat_apply(mat, mat_apply(mod.sigma, v)))
        rep.failures.push_back("sigma does not intertwine generator " + std::to_string(g));
    }
    if (rep.failures.size() > 20) break;
  }
  return rep;
}

Character ModCat::character(const Module& mod) const {
  Character ch;
  for (const auto& b : mod.blocks) ch[{b.seq, b.deg}] += b.dim;
  return ch;
}

int ModCat::epsilon(const Module& mod, int j, bool right) const {
  std::string o = orbit_seq(j);
  const int t = static_cast<int>(o.size());
  std::string so = o;
  std::sort(so.begin(), so.end());
  int best = 0;
  for (const auto& b : mod.blocks) {
    if (b.dim == 0) continue;
    int k = 0;
    while ((k + 1) * t <= static_cast<int>(b.seq.size())) {
      std::string pre = right ? b.seq.substr(b.seq.size() - (k + 1) * t) : b.seq.substr(0, (k + 1) * t);
      std::string sp = pre;
      std::sort(sp.begin(), sp.end());
      std::string target;
      for (char c : so) target.append(k + 1, c);
      std::sort(target.begin(), target.end());
      if (sp != target) break;
      ++k;
    }
    best = std::max(best, k);
  }
  return best;
}

LaurentScalar ModCat::word_pairing(const Module& mod, const std::vector<int>& jword) const {
  std::string i;
  Perm pi;
  for (int j : jword) {
    std::string o = orbit_seq(j);
    Perm r = rotation(fd_.aut, o);
    for (char& c : r) c = static_cast<char>(c + static_cast<int>(i.size()));
    i += o;
    pi += r;
  }
  if (static_cast<int>(i.size()) != mod.m) throw DomainError("word weight does not match the module");
  Word w = perm::canonical_word(pi);
  const int nn = mod.n;
  LaurentScalar out = LaurentScalar::constant(0, nn);
  for (size_t bi = 0; bi < mod.blocks.size(); ++bi) {
    const ModBlock& b = mod.blocks[bi];
    if (b.seq != i) continue;
    std::vector<u64> tr(nn, 0);
    tr[0] = static_cast<u64>(b.dim);
    for (int x = b.off; x < b.off + b.dim; ++x) {
      SVec v{{static_cast<std::uint32_t>(x), 1}};
      for (int r = 1; r < nn; ++r) {
        for (auto k = w.rbegin(); k != w.rend() && !v.empty(); ++k) {
          if (!mod.has_tau(static_cast<unsigned char>(*k))) throw DomainError("module lacks the generators for this pairing");
          v = mat_apply(mod.tau[static_cast<unsigned char>(*k)], v);
        }
        v = detail::sigma_power(mod, v, nn - 1);
        for (auto [rr, val] : v)
          if (static_cast<int>(rr) == x) tr[r] = Fp::add(tr[r], val);
      }
    }
    out += LaurentScalar(lift_root_sum(tr, nn, b.dim), b.deg);
  }
  return out;
}

std::map<std::vector<int>, LaurentScalar> ModCat::twisted_character(const Module& mod) const {
  std::map<std::vector<int>, LaurentScalar> out;
  Weight nu = fd_.descend(mod.weight(fd_.base.size()));
  for (const Seq& w : seq_enumerate(nu, 64)) {
    LaurentScalar v = word_pairing(mod, w);
    if (!v.is_zero()) out[w] = v;
  }
  return out;
}

}  // namespace klrfold
