#include "klrfold/groth.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <unordered_map>

#include "klrfold/errors.hpp"
#include "module_internal.hpp"

namespace klrfold {

using u64 = std::uint64_t;

namespace {

LaurentScalar integral(const LaurentScalar& x) {
  if (x.is_zero()) return LaurentScalar();
  if (!x.is_integral()) throw DomainError("value outside Z[q,q^-1]: " + x.str());
  int shift = 0;
  PolyZ p = x.to_poly(&shift);
  return LaurentScalar::from_poly(p, shift);
}

LaurentScalar one() { return LaurentScalar::constant(1); }

std::string wstr(const Weight& nu) {
  std::string s = "(";
  for (size_t k = 0; k < nu.size(); ++k) s += (k ? "," : "") + std::to_string(nu[k]);
  return s + ")";
}

JWord concat(const JWord& a, const JWord& b) {
  JWord r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

/// Sparse semi-echelon rows over Fp keyed by pivot (smallest index of the row).
class SparseEchelon {
 public:
  void reduce(SVec& v) const {
    size_t pos = 0;
    while (pos < v.size()) {
      auto it = rows_.find(v[pos].first);
      if (it == rows_.end()) {
        ++pos;
        continue;
      }
      svec_axpy(v, it->second, Fp::neg(v[pos].second));
    }
  }
  bool insert(SVec v) {
    reduce(v);
    if (v.empty()) return false;
    u64 inv = Fp::inv(v[0].second);
    for (auto& e : v) e.second = Fp::mul(e.second, inv);
    rows_.emplace(v[0].first, std::move(v));
    return true;
  }
  bool is_pivot(std::uint32_t c) const { return rows_.count(c) > 0; }
  size_t size() const { return rows_.size(); }

 private:
  std::unordered_map<std::uint32_t, SVec> rows_;
};

int ydeg_min(const CartanDatum& base) {
  int m = base.dot[0][0];
  for (int i = 0; i < base.size(); ++i) m = std::min(m, base.dot[i][i]);
  return m;
}

int min_degree(const Module& m) {
  int lo = 0;
  bool first = true;
  for (const auto& b : m.blocks) {
    lo = first ? b.deg : std::min(lo, b.deg);
    first = false;
  }
  return lo;
}

}  // namespace

// ---------------------------------------------------------------- tables

std::vector<int> SimpleTable::at(const Weight& nu) const {
  std::vector<int> out;
  for (int b = 0; b < size(); ++b)
    if (dual[b].nu == nu) out.push_back(b);
  return out;
}

int SimpleTable::index_of(const std::string& l) const {
  for (int b = 0; b < size(); ++b)
    if (label[b] == l) return b;
  return -1;
}

SimpleTable simple_table(ModCat& mc, int max_height, long dim_cap) {
  SimpleTable t;
  t.fd = mc.folded();
  t.crystal = generate_crystal_simples(mc, max_height, dim_cap);
  t.graph = crystal_from_modules(t.crystal, t.fd);
  const int r = t.crystal.rank;
  t.jseq = round_robin(r, r * (max_height + 1));
  for (int b = 0; b < t.graph.size(); ++b) {
    t.iota.push_back(iota_string(t.graph, b, t.jseq));
    t.label.push_back(iota_str(t.iota.back()));
    DualElement d;
    d.nu = t.crystal.v[b].nu;
    for (const auto& [w, v] : t.crystal.v[b].twisted)
      if (!v.is_zero()) d.values[w] = integral(v);
    if (height(d.nu) == 0) d.values[JWord{}] = one();
    t.dual.push_back(std::move(d));
  }
  return t;
}

// ---------------------------------------------------------------- pairings

Module projective_word(ModCat& mc, const JWord& w, int trunc) {
  if (w.empty()) return mc.unit();
  Module m = mc.one_colour_projective(w[0], trunc);
  for (size_t k = 1; k < w.size(); ++k) m = mc.induce(m, mc.one_colour_projective(w[k], trunc));
  return m;
}

SeriesScalar tensor_trace_series(const ModCat& mc, const Module& q, const Module& p, int precision) {
  const int nn = mc.n();
  if (q.parts.size() > 1 || p.parts.size() > 1) throw DomainError("pairing needs modules over one R(nu)");
  if (q.m != p.m) return SeriesScalar::from_laurent(LaurentScalar::constant(0, nn), precision);
  const auto& dot = mc.folded().base.dot;
  const int m = q.m;
  LaurentScalar out = LaurentScalar::constant(0, nn);
  if (q.dim() == 0 || p.dim() == 0) return SeriesScalar::from_laurent(out, precision);

  std::map<std::string, std::vector<int>> qby, pby;
  for (size_t b = 0; b < q.blocks.size(); ++b) qby[q.blocks[b].seq].push_back(static_cast<int>(b));
  for (size_t b = 0; b < p.blocks.size(); ++b) pby[p.blocks[b].seq].push_back(static_cast<int>(b));
  const u64 pd = static_cast<u64>(p.dim());
  auto col = [&](std::uint32_t qi, std::uint32_t pi) { return static_cast<u64>(qi) * pd + pi; };

  // sigma^r images of basis vectors, cached.
  std::vector<std::unordered_map<std::uint32_t, SVec>> sq(nn), sp(nn);
  auto spow = [&](const Module& mod, std::vector<std::unordered_map<std::uint32_t, SVec>>& cache, std::uint32_t i,
                  int r) -> const SVec& {
    auto it = cache[r].find(i);
    if (it != cache[r].end()) return it->second;
    return cache[r].emplace(i, detail::sigma_power(mod, SVec{{i, 1}}, r)).first->second;
  };

  const int lo = min_degree(q) + min_degree(p);
  for (int e = lo; e <= precision; ++e) {
    // Columns of degree e.
    std::unordered_map<u64, std::uint32_t> index;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> cols;
    for (const auto& [s, qbs] : qby) {
      auto pit = pby.find(s);
      if (pit == pby.end()) continue;
      for (int bq : qbs)
        for (int bp : pit->second) {
          if (q.blocks[bq].deg + p.blocks[bp].deg != e) continue;
          for (int i = 0; i < q.blocks[bq].dim; ++i)
            for (int j = 0; j < p.blocks[bp].dim; ++j) {
              std::uint32_t qi = q.blocks[bq].off + i, pi = p.blocks[bp].off + j;
              index.emplace(col(qi, pi), static_cast<std::uint32_t>(cols.size()));
              cols.emplace_back(qi, pi);
            }
        }
    }
    if (cols.empty()) continue;
    auto lookup = [&](std::uint32_t qi, std::uint32_t pi) {
      auto it = index.find(col(qi, pi));
      if (it == index.end()) throw DomainError("balanced tensor column missing");
      return it->second;
    };
    SparseEchelon ech;
    // Relations g q (x) p - q (x) g p.
    for (int g = 0; g < 2 * m - 1; ++g) {
      const bool is_tau = g >= m;
      const int k = is_tau ? g - m : g;
      if (is_tau && (!q.has_tau(k) || !p.has_tau(k))) continue;
      const linalg::Sparse& gq = detail::gen_matrix(q, g);
      const linalg::Sparse& gp = detail::gen_matrix(p, g);
      for (const auto& [s, qbs] : qby) {
        std::string t = s;
        const int a = static_cast<unsigned char>(s[k]);
        int delta;
        if (is_tau) {
          std::swap(t[k], t[k + 1]);
          delta = -dot[a][static_cast<unsigned char>(s[k + 1])];
        } else {
          delta = dot[a][a];
        }
        auto pit = pby.find(t);
        if (pit == pby.end()) continue;
        for (int bq : qbs)
          for (int bp : pit->second) {
            if (q.blocks[bq].deg + p.blocks[bp].deg + delta != e) continue;
            for (int i = 0; i < q.blocks[bq].dim; ++i) {
              std::uint32_t qi = q.blocks[bq].off + i;
              SVec gqi = column(gq, static_cast<int>(qi));
              for (int j = 0; j < p.blocks[bp].dim; ++j) {
                std::uint32_t pi = p.blocks[bp].off + j;
                SVec row;
                for (const auto& [r, c] : gqi) row.emplace_back(lookup(r, pi), c);
                for (const auto& [r, c] : column(gp, static_cast<int>(pi))) row.emplace_back(lookup(qi, r), Fp::neg(c));
                std::sort(row.begin(), row.end());
                SVec merged;
                for (const auto& [c, v] : row) {
                  if (!merged.empty() && merged.back().first == c)
                    merged.back().second = Fp::add(merged.back().second, v);
                  else
                    merged.emplace_back(c, v);
                }
                std::erase_if(merged, [](const auto& x) { return x.second == 0; });
                if (!merged.empty()) ech.insert(std::move(merged));
              }
            }
          }
      }
    }
    const long quot = static_cast<long>(cols.size() - ech.size());
    if (quot == 0) continue;
    std::vector<u64> tr(nn, 0);
    for (int r = 0; r < nn; ++r) {
      for (std::uint32_t c = 0; c < cols.size(); ++c) {
        if (ech.is_pivot(c)) continue;
        if (r == 0) {
          tr[0] = Fp::add(tr[0], 1);
          continue;
        }
        const SVec& a = spow(q, sq, cols[c].first, r);
        const SVec& b = spow(p, sp, cols[c].second, r);
        SVec v;
        for (const auto& [x, cx] : a)
          for (const auto& [y, cy] : b) v.emplace_back(lookup(x, y), Fp::mul(cx, cy));
        std::sort(v.begin(), v.end());
        ech.reduce(v);
        for (const auto& [x, cx] : v)
          if (x == c) tr[r] = Fp::add(tr[r], cx);
      }
    }
    out += LaurentScalar(lift_root_sum(tr, nn, quot), e);
  }
  return SeriesScalar::from_laurent(out, precision);
}

PairingReport pair_proj_proj(ModCat& mc, const JWord& x, const JWord& y, int precision) {
  PairingReport rep;
  rep.precision = precision;
  const int yd = ydeg_min(mc.folded().base);
  const int lo = min_degree(projective_word(mc, x, 1)) + min_degree(projective_word(mc, y, 1));
  rep.trunc = std::max(1, (precision - lo) / yd + 1);
  rep.trunc_check = rep.trunc + 1;
  Module px = projective_word(mc, x, rep.trunc), py = projective_word(mc, y, rep.trunc);
  rep.value = tensor_trace_series(mc, py, px, precision);
  Module px2 = projective_word(mc, x, rep.trunc_check), py2 = projective_word(mc, y, rep.trunc_check);
  rep.stable = tensor_trace_series(mc, py2, px2, precision) == rep.value;
  return rep;
}

LaurentScalar pair_proj_simple(const ModCat& mc, const JWord& x, const Module& m) {
  Weight nu(mc.folded().folded.size(), 0);
  for (int j : x) ++nu[j];
  if (mc.folded().descend(m.weight(mc.folded().base.size())) != nu) return LaurentScalar();
  return mc.word_pairing(m, x);
}

// ---------------------------------------------------------------- one colour

IdentityReport qbinomial_identity_check(ModCat& mc, int j, int m, int n) {
  IdentityReport rep;
  Module l = mc.unit();
  for (int k = 0; k < m + n; ++k) l = mc.f_op(l, j);
  const int d = mc.folded().folded.d(j);
  LaurentScalar w = integral(mc.word_pairing(l, JWord(m + n, j)));
  // <P(j)^(m+n), L(j^{m+n})> must be 1 and the product pairs to the binomial.
  LaurentScalar top = w.divexact(qfactorial(m + n, d));
  LaurentScalar lhs = w.divexact(qfactorial(m, d) * qfactorial(n, d));
  LaurentScalar rhs = qbinom(m + n, n, d) * top;
  rep.ok = top == one() && lhs == rhs;
  rep.detail = "[P^(" + std::to_string(m) + ")][P^(" + std::to_string(n) + ")] = (" + lhs.str() + ") [P^(" +
               std::to_string(m + n) + ")]; expected " + qbinom(m + n, n, d).str();
  return rep;
}

// ---------------------------------------------------------------- triangularity

JWord expand_iota(const std::vector<int>& c, const std::vector<int>& jseq) {
  JWord w;
  for (size_t k = 0; k < c.size(); ++k) w.insert(w.end(), c[k], jseq[k]);
  return w;
}

LaurentScalar pair_divided(const SimpleTable& t, const std::vector<int>& c, int b) {
  LaurentScalar fact = one();
  for (size_t k = 0; k < c.size(); ++k) fact *= qfactorial(c[k], t.fd.folded.d(t.jseq[k]));
  return t.dual[b].at(expand_iota(c, t.jseq)).divexact(fact);
}

TriangularityReport iota_triangularity(const SimpleTable& t, const Weight& nu) {
  TriangularityReport rep;
  rep.nu = nu;
  std::vector<int> idx = t.at(nu);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return t.iota[a] < t.iota[b]; });
  for (int b : idx) rep.iota.push_back(t.iota[b]);
  const int k = static_cast<int>(idx.size());
  rep.matrix.assign(k, std::vector<LaurentScalar>(k));
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) {
      rep.matrix[r][c] = pair_divided(t, t.iota[idx[r]], idx[c]);
      if (r == c && rep.matrix[r][c] != one())
        rep.failures.push_back("diagonal entry at " + t.label[idx[r]] + " is " + rep.matrix[r][c].str());
      if (c < r && !rep.matrix[r][c].is_zero())
        rep.failures.push_back("Hom(P^" + t.label[idx[r]] + ", L" + t.label[idx[c]] + ") nonzero below the diagonal");
    }
  rep.ok = rep.failures.empty() && k == static_cast<int>(graded_dim_f(t.fd.folded, nu));
  if (k != static_cast<int>(graded_dim_f(t.fd.folded, nu))) rep.failures.push_back("simple count differs at " + wstr(nu));
  return rep;
}

// ---------------------------------------------------------------- classes

KClass projective_class(const SimpleTable& t, const JWord& w) {
  KClass k;
  k.nu.assign(t.fd.folded.size(), 0);
  for (int j : w) ++k.nu[j];
  for (int b : t.at(k.nu)) {
    LaurentScalar v = t.dual[b].at(w);
    if (!v.is_zero()) k.coeff[t.label[b]] = v;
  }
  return k;
}

bool expand_dual(const FAlgebra& f, const SimpleTable& t, const DualElement& phi, KClass& out) {
  out = KClass{phi.nu, {}};
  std::vector<int> idx = t.at(phi.nu);
  std::vector<JWord> ws = f.words(phi.nu);
  ratlin::Matrix a(ws.size(), std::vector<RationalScalar>(idx.size()));
  std::vector<RationalScalar> rhs(ws.size());
  for (size_t r = 0; r < ws.size(); ++r) {
    for (size_t c = 0; c < idx.size(); ++c) {
      LaurentScalar v = t.dual[idx[c]].at(ws[r]);
      if (!v.is_zero()) a[r][c] = RationalScalar::from_laurent(v);
    }
    LaurentScalar v = phi.at(ws[r]);
    if (!v.is_zero()) rhs[r] = RationalScalar::from_laurent(integral(v));
  }
  std::vector<RationalScalar> x;
  if (!ratlin::solve(a, rhs, x)) return false;
  for (size_t c = 0; c < idx.size(); ++c) {
    if (x[c].is_zero()) continue;
    if (!x[c].is_laurent()) return false;
    out.coeff[t.label[idx[c]]] = x[c].to_laurent();
  }
  return true;
}

namespace {

DualElement dual_of(const ModCat& mc, const Module& m, const Weight& nu) {
  DualElement d;
  d.nu = nu;
  for (const auto& [w, v] : mc.twisted_character(m))
    if (!v.is_zero()) d.values[w] = v;
  return d;
}

}  // namespace

CoproductReport coproduct_constants(ModCat& mc, const SimpleTable& t, const KClass& x, const Weight& lambda,
                                    const Weight& mu) {
  CoproductReport rep;
  FAlgebra f(t.fd.folded);
  Weight nu = lambda;
  for (size_t k = 0; k < nu.size(); ++k) nu[k] += mu[k];
  if (nu != x.nu) throw DomainError("coproduct bidegree does not add up to the class weight");
  // Coefficient of [P_b] (x) [P_b'] in r(x) is <r(x), [L_b] (x) [L_b']> = <x, [L_b o L_b']>.
  for (int b : t.at(lambda))
    for (int bp : t.at(mu)) {
      Module ind = mc.induce(t.crystal.v[b].mod, t.crystal.v[bp].mod);
      KClass k;
      std::string key = t.label[b] + "|" + t.label[bp];
      try {
        if (!expand_dual(f, t, dual_of(mc, ind, nu), k)) {
          rep.integral = false;
          rep.failures.push_back("induced class of " + key + " not in the span of the simples");
          continue;
        }
      } catch (const DomainError& e) {
        rep.integral = false;
        rep.failures.push_back(key + ": " + e.what());
        continue;
      }
      LaurentScalar c;
      for (const auto& [lab, v] : x.coeff) {
        auto it = k.coeff.find(lab);
        if (it != k.coeff.end()) c += v * it->second;
      }
      if (!c.is_zero() && !c.is_integral()) {
        rep.integral = false;
        rep.failures.push_back(key + ": constant " + c.str() + " not in Z[q,q^-1]");
      }
      if (c != c.bar()) rep.bar_invariant = false;
      if (!c.is_zero()) rep.constants[{t.label[b], t.label[bp]}] = c;
    }
  return rep;
}

// ---------------------------------------------------------------- Mackey

MackeyReport mackey_check(ModCat& mc, const Weight& l1, const Weight& l2, const Weight& m1, const Weight& m2,
                          const Module& a, const Module& b) {
  MackeyReport rep;
  const FoldedDatum& fd = mc.folded();
  const int r = fd.folded.size();
  for (int k = 0; k < r; ++k)
    if (l1[k] + l2[k] != m1[k] + m2[k]) throw DomainError("Mackey weights do not balance");
  FAlgebra f(fd.folded, -1);
  auto ch_a = mc.twisted_character(a);
  auto ch_b = mc.twisted_character(b);
  Module ind = mc.induce(a, b);
  auto ch_m = mc.twisted_character(ind);
  auto get = [](const std::map<std::vector<int>, LaurentScalar>& ch, const JWord& w) {
    auto it = ch.find(w);
    return it == ch.end() ? LaurentScalar() : it->second;
  };

  // Tuples over I: a-stable ones correspond to the J-level terms, the rest fall in traceless orbits.
  {
    Weight L1 = fd.lift(l1), L2 = fd.lift(l2), M1 = fd.lift(m1);
    const int ni = fd.base.size();
    Weight e11(ni, 0);
    std::set<Weight> seen;
    std::function<void(int)> rec = [&](int i) {
      if (i == ni) {
        for (int v = 0; v < ni; ++v) {
          int e12 = L1[v] - e11[v], e21 = M1[v] - e11[v], e22 = L2[v] - e21;
          if (e12 < 0 || e21 < 0 || e22 < 0) return;
        }
        bool stable = true;
        for (int v = 0; v < ni; ++v) stable = stable && e11[fd.aut(v)] == e11[v];
        if (stable) {
          ++rep.terms;
          return;
        }
        if (seen.count(e11)) return;
        ++rep.traceless_orbits;
        Weight cur = e11;
        for (int s = 0; s < fd.n(); ++s) {
          seen.insert(cur);
          Weight nxt(ni);
          for (int v = 0; v < ni; ++v) nxt[fd.aut(v)] = cur[v];
          cur = nxt;
        }
        return;
      }
      for (int c = 0; c <= std::min(L1[i], M1[i]); ++c) {
        e11[i] = c;
        rec(i + 1);
      }
    };
    rec(0);
  }

  for (const JWord& w1 : f.words(m1)) {
    TensorElement r1 = f.coproduct(FreeElement::word(w1));
    for (const JWord& w2 : f.words(m2)) {
      TensorElement r2 = f.coproduct(FreeElement::word(w2));
      LaurentScalar lhs = get(ch_m, concat(w1, w2));
      LaurentScalar rhs;
      for (const auto& [k1, c1] : r1.terms) {
        Weight n11 = f.content(k1.first), n21 = f.content(k1.second);
        for (const auto& [k2, c2] : r2.terms) {
          Weight n12 = f.content(k2.first);
          bool fits = true;
          for (int k = 0; k < r; ++k) fits = fits && n11[k] + n12[k] == l1[k];
          if (!fits) continue;
          LaurentScalar va = get(ch_a, concat(k1.first, k2.first));
          if (va.is_zero()) continue;
          LaurentScalar vb = get(ch_b, concat(k1.second, k2.second));
          if (vb.is_zero()) continue;
          int shift = -fd.folded.pair(n21, n12);
          rhs += (c1 * c2).to_laurent() * LaurentScalar::qpow(shift) * va * vb;
        }
      }
      ++rep.checked;
      if (lhs != rhs)
        rep.failures.push_back("word pair " + wstr(w1) + "|" + wstr(w2) + ": " + lhs.str() + " vs " + rhs.str());
    }
  }
  return rep;
}

// ---------------------------------------------------------------- orthonormality

OrthonormalityReport orthonormality(const SimpleTable& t, int max_height) {
  OrthonormalityReport rep;
  for (int h = 0; h <= max_height; ++h)
    for (const Weight& nu : weights_of_height(t.fd.folded.size(), h)) {
      std::vector<int> idx = t.at(nu);
      std::sort(idx.begin(), idx.end(), [&](int a, int b) { return t.iota[a] < t.iota[b]; });
      const int k = static_cast<int>(idx.size());
      std::vector<std::vector<LaurentScalar>> tm(k, std::vector<LaurentScalar>(k));
      for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) tm[r][c] = pair_divided(t, t.iota[idx[r]], idx[c]);
      bool unitri = true;
      for (int r = 0; r < k; ++r)
        for (int c = 0; c <= r; ++c)
          if (tm[r][c] != (r == c ? one() : LaurentScalar())) unitri = false;
      if (!unitri) {
        rep.failures.push_back("pairing matrix not unitriangular at " + wstr(nu));
        continue;
      }
      // X T = I for upper unitriangular T, solved column by column.
      std::vector<std::vector<LaurentScalar>> x(k, std::vector<LaurentScalar>(k));
      for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) {
          LaurentScalar s = (r == c) ? one() : LaurentScalar();
          for (int m = 0; m < c; ++m) s -= x[r][m] * tm[m][c];
          x[r][c] = s;  // diagonal of T is 1
        }
      for (int b = 0; b < k; ++b)
        for (int bp = 0; bp < k; ++bp) {
          // <[P_b], [L_b']> = sum_c x_bc <P^(c), L_b'>
          LaurentScalar v;
          for (int c = 0; c < k; ++c) v += x[b][c] * pair_divided(t, t.iota[idx[c]], idx[bp]);
          ++rep.checked;
          if (v != (b == bp ? one() : LaurentScalar()))
            rep.failures.push_back("<P" + t.label[idx[b]] + ", L" + t.label[idx[bp]] + "> = " + v.str());
          if (x[b][bp] != x[b][bp].bar())
            rep.failures.push_back("[P" + t.label[idx[b]] + "] is not bar-invariant");
        }
    }
  return rep;
}

// ---------------------------------------------------------------- duality

DualityReport duality_functoriality(ModCat& mc, const SimpleTable& t, int trunc) {
  DualityReport rep;
  const int r = t.fd.folded.size();
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) {
      Module p = mc.one_colour_projective(a, trunc), q = mc.one_colour_projective(b, trunc);
      Module m = mc.induce(p, q);
      Module rhs = mc.induce(mc.dualize(q), mc.dualize(p));
      Weight wa(r, 0), wb(r, 0);
      wa[a] = 1;
      wb[b] = 1;
      const int s = t.fd.folded.pair(wa, wb);
      // D(P o Q) = shift(DQ o DP, |P|.|Q|), tested as P o Q = shift(D(DQ o DP), -|P|.|Q|) with P o Q cyclic.
      int blk = m.find_block(mc.orbit_seq(a) + mc.orbit_seq(b), 0);
      ++rep.checked;
      if (blk < 0 || !mc.isomorphic_cyclic(m, SVec{{static_cast<std::uint32_t>(m.blocks[blk].off), 1}},
                                           mc.shift(mc.dualize(rhs), -s)))
        rep.failures.push_back("D(P" + std::to_string(a) + " o P" + std::to_string(b) + ") not isomorphic to the shifted swap");
      // K-level shadow of D(P_w) = P_w: <P_w, L> is bar-invariant for self-dual L.
      JWord w{a, b};
      Weight nu(r, 0);
      ++nu[a];
      ++nu[b];
      for (int l : t.at(nu)) {
        LaurentScalar v = t.dual[l].at(w);
        ++rep.checked;
        if (v != v.bar()) rep.failures.push_back("<P" + wstr(w) + ", L" + t.label[l] + "> not bar-invariant");
      }
    }
  for (int l = 0; l < t.size(); ++l) {
    const Module& m = t.crystal.v[l].mod;
    if (m.dim() == 0) continue;
    ++rep.checked;
    // A simple module is generated by any nonzero vector.
    if (!mc.isomorphic_cyclic(m, SVec{{0, 1}}, mc.dualize(mc.dualize(m))))
      rep.failures.push_back("D^2 L" + t.label[l] + " not isomorphic to L");
  }
  return rep;
}

// ---------------------------------------------------------------- leading coefficients

LeadingReport leading_coefficient_check(const FAlgebra& f, const SimpleTable& t, int max_height) {
  LeadingReport rep;
  for (int b = 0; b < t.size(); ++b) {
    if (height(t.dual[b].nu) > max_height) continue;
    for (int j = 0; j < t.graph.rank; ++j) {
      const int eps = t.graph.eps[b][j];
      int e = b;
      for (int p = 1; p <= eps; ++p) {
        e = t.graph.e[e][j];
        ++rep.checked;
        std::string where = "L" + t.label[b] + " j=" + std::to_string(j) + " p=" + std::to_string(p);
        if (e == CrystalGraph::kNone) {
          rep.failures.push_back(where + ": missing e-edge");
          break;
        }
        KClass k;
        if (!expand_dual(f, t, f.dual_r(t.dual[b], j, p), k)) {
          rep.failures.push_back(where + ": r_{j^p}[M] outside the simple span");
          continue;
        }
        LaurentScalar want = qbinom(eps, p, t.fd.folded.d(j));
        auto it = k.coeff.find(t.label[e]);
        if (it == k.coeff.end() || it->second != want)
          rep.failures.push_back(where + ": leading coefficient " + (it == k.coeff.end() ? "0" : it->second.str()));
        for (const auto& [lab, c] : k.coeff) {
          if (lab == t.label[e]) continue;
          int n = t.index_of(lab);
          if (!c.is_integral()) rep.failures.push_back(where + ": coefficient outside Z[q,q^-1]");
          if (n < 0 || t.graph.eps[n][j] >= eps - p) rep.failures.push_back(where + ": extra term L" + lab);
        }
      }
    }
  }
  return rep;
}

}  // namespace klrfold
