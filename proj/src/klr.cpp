#include "klrfold/klr.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "klrfold/errors.hpp"

namespace klrfold {

namespace {

std::string zeros(int m) { return std::string(m, '\0'); }

NormalWord make_word(const Perm& z, const std::string& s) { return {z, zeros(static_cast<int>(s.size())), s}; }

Lin single(const NormalWord& w, const CycloScalar& c) {
  Lin x;
  lin_add(x, w, c);
  return x;
}

CycloScalar one() { return CycloScalar(1, 1L); }

}  // namespace

// ---------------------------------------------------------------------------
// Q family

QFamily default_q_family(const CartanDatum& d) {
  int n = d.size();
  QFamily q;
  q.q.assign(n, std::vector<Poly2>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (d.dot[i][j] == 0) {
        q.q[i][j][{0, 0}] = one();
      } else {
        q.q[i][j][{-d.c(i, j), 0}] += one();
        q.q[i][j][{0, -d.c(j, i)}] += one();
      }
    }
  return q;
}

ValidationReport validate_q_family(const CartanDatum& d, const DiagramAut& a, const QFamily& q) {
  ValidationReport r;
  int n = d.size();
  auto lab = [&](int i, int j) { return "Q_" + d.labels[i] + d.labels[j]; };
  auto nonzero = [](const Poly2& p) {
    Poly2 out;
    for (const auto& [e, c] : p)
      if (!c.is_zero()) out.emplace(e, c);
    return out;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Poly2 p = nonzero(q(i, j));
      if (i == j) {
        if (!p.empty()) r.failures.push_back(lab(i, j) + " must vanish");
        continue;
      }
      for (const auto& [e, c] : p)
        if (e.first * d.d(i) + e.second * d.d(j) != -d.dot[i][j])
          r.failures.push_back(lab(i, j) + " is not homogeneous of the required degree");
      if (!p.count({-d.c(i, j), 0}) || !p.count({0, -d.c(j, i)}))
        r.failures.push_back(lab(i, j) + " lacks a nonzero extreme coefficient");
      Poly2 swapped;
      for (const auto& [e, c] : nonzero(q(j, i))) swapped.emplace(std::make_pair(e.second, e.first), c);
      if (swapped != p) r.failures.push_back(lab(i, j) + "(u,v) != Q_ji(v,u)");
      if (nonzero(q(a(i), a(j))) != p) r.failures.push_back(lab(i, j) + " is not a-invariant");
    }
  return r;
}

// ---------------------------------------------------------------------------
// permutations

namespace perm {

Perm identity(int m) {
  Perm z(m, '\0');
  for (int i = 0; i < m; ++i) z[i] = static_cast<char>(i);
  return z;
}

int length(const Perm& z) {
  int l = 0;
  for (size_t i = 0; i < z.size(); ++i)
    for (size_t j = i + 1; j < z.size(); ++j)
      if (static_cast<unsigned char>(z[i]) > static_cast<unsigned char>(z[j])) ++l;
  return l;
}

Perm left_mul(int k, const Perm& z) {
  Perm r(z);
  for (auto& c : r) {
    if (c == k) c = static_cast<char>(k + 1);
    else if (c == k + 1) c = static_cast<char>(k);
  }
  return r;
}

bool is_left_descent(int k, const Perm& z) {
  size_t pk = z.find(static_cast<char>(k)), pk1 = z.find(static_cast<char>(k + 1));
  return pk1 < pk;
}

Word canonical_word(const Perm& z0) {
  Word w;
  Perm z = z0;
  int m = static_cast<int>(z.size());
  for (;;) {
    int k = 0;
    while (k + 1 < m && !is_left_descent(k, z)) ++k;
    if (k + 1 >= m) break;
    w.push_back(static_cast<char>(k));
    z = left_mul(k, z);
  }
  return w;
}

Perm from_word(const Word& w, int m) {
  Perm z = identity(m);
  for (auto it = w.rbegin(); it != w.rend(); ++it) z = left_mul(*it, z);
  return z;
}

std::string act(const Perm& z, const std::string& s) {
  std::string out(s.size(), '\0');
  for (size_t q = 0; q < s.size(); ++q) out[static_cast<unsigned char>(z[q])] = s[q];
  return out;
}

Perm inverse(const Perm& z) {
  Perm r(z.size(), '\0');
  for (size_t q = 0; q < z.size(); ++q) r[static_cast<unsigned char>(z[q])] = static_cast<char>(q);
  return r;
}

Perm compose(const Perm& a, const Perm& b) {
  Perm r(b.size(), '\0');
  for (size_t q = 0; q < b.size(); ++q) r[q] = a[static_cast<unsigned char>(b[q])];
  return r;
}

std::vector<Perm> all(int m) {
  std::vector<Perm> out;
  Perm z = identity(m);
  do out.push_back(z);
  while (std::next_permutation(z.begin(), z.end()));
  return out;
}

}  // namespace perm

// ---------------------------------------------------------------------------
// linear combinations

void lin_add(Lin& acc, const NormalWord& w, const CycloScalar& c) {
  if (c.is_zero()) return;
  auto it = acc.find(w);
  if (it == acc.end()) {
    acc.emplace(w, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) acc.erase(it);
  }
}

void lin_add(Lin& acc, const Lin& x, const CycloScalar& c) {
  if (c.is_zero()) return;
  bool unit = c.is_one();
  for (const auto& [w, v] : x) lin_add(acc, w, unit ? v : v * c);
}

KLRElement operator+(const KLRElement& a, const KLRElement& b) {
  if (a.m != b.m && !a.is_zero() && !b.is_zero()) throw DomainError("adding elements of different weights");
  KLRElement r = a.is_zero() ? b : a;
  if (!a.is_zero()) lin_add(r.terms, b.terms, one());
  return r;
}

KLRElement operator*(const CycloScalar& c, const KLRElement& a) {
  KLRElement r;
  r.m = a.m;
  lin_add(r.terms, a.terms, c);
  return r;
}

KLRElement operator-(const KLRElement& a, const KLRElement& b) {
  return a + CycloScalar(1, -1L) * b;
}

// ---------------------------------------------------------------------------
// algebra context

KLRAlgebra::KLRAlgebra(CartanDatum datum, QFamily q, DiagramAut aut)
    : datum_(std::move(datum)), q_(std::move(q)), aut_(std::move(aut)) {
  ValidationReport r = validate_q_family(datum_, aut_, q_);
  if (!r.ok()) throw ValidationError("invalid Q family: " + r.failures.front());
}

KLRAlgebra::KLRAlgebra(const CartanDatum& datum, const DiagramAut& aut)
    : KLRAlgebra(datum, default_q_family(datum), aut) {}

KLRElement KLRAlgebra::basis(const NormalWord& w) const {
  KLRElement x;
  x.m = static_cast<int>(w.s.size());
  lin_add(x.terms, w, one());
  return x;
}

KLRElement KLRAlgebra::idem(const Seq& s0) const {
  std::string s(s0.begin(), s0.end());
  return basis(make_word(perm::identity(static_cast<int>(s.size())), s));
}

KLRElement KLRAlgebra::y(int l, const Seq& s0) const {
  std::string s(s0.begin(), s0.end());
  NormalWord w = make_word(perm::identity(static_cast<int>(s.size())), s);
  w.beta[l] = 1;
  return basis(w);
}

KLRElement KLRAlgebra::tau(int k, const Seq& s0) const {
  std::string s(s0.begin(), s0.end());
  return basis(make_word(perm::left_mul(k, perm::identity(static_cast<int>(s.size()))), s));
}

KLRElement KLRAlgebra::scalar(const CycloScalar& c, const KLRElement& x) const { return c * x; }

Lin KLRAlgebra::times_dots(const Lin& x, const std::string& beta) const {
  if (std::all_of(beta.begin(), beta.end(), [](char c) { return c == 0; })) return x;
  Lin r;
  for (const auto& [w, c] : x) {
    NormalWord v = w;
    for (size_t p = 0; p < beta.size(); ++p) v.beta[p] = static_cast<char>(v.beta[p] + beta[p]);
    r.emplace(std::move(v), c);
  }
  return r;
}

Lin KLRAlgebra::left_y_lin(int l, const Lin& x) {
  Lin r;
  for (const auto& [w, c] : x) {
    const Lin& base = left_y(l, w.z, w.s);
    lin_add(r, times_dots(base, w.beta), c);
  }
  return r;
}

Lin KLRAlgebra::left_tau_lin(int k, const Lin& x) {
  Lin r;
  for (const auto& [w, c] : x) {
    const Lin& base = left_tau(k, w.z, w.s);
    lin_add(r, times_dots(base, w.beta), c);
  }
  return r;
}

Lin KLRAlgebra::left_y_monomial(const std::string& beta, const Lin& x0) {
  Lin x = x0;
  for (size_t p = 0; p < beta.size(); ++p)
    for (int e = 0; e < static_cast<unsigned char>(beta[p]); ++e) x = left_y_lin(static_cast<int>(p), x);
  return x;
}

const Lin& KLRAlgebra::left_y(int l, const Perm& z, const std::string& s) {
  std::string key = static_cast<char>(l) + z + s;
  auto it = ly_.find(key);
  if (it != ly_.end()) return it->second;
  Lin res;
  if (perm::length(z) == 0) {
    NormalWord w = make_word(z, s);
    w.beta[l] = 1;
    lin_add(res, w, one());
  } else {
    Word W = perm::canonical_word(z);
    int k = W[0];
    Perm zr = perm::left_mul(k, z);
    std::string t = perm::act(zr, s);
    int l2 = l == k ? k + 1 : (l == k + 1 ? k : l);
    Lin inner = left_y(l2, zr, s);
    res = left_tau_lin(k, inner);
    if (t[k] == t[k + 1]) {
      if (l == k + 1) lin_add(res, make_word(zr, s), one());
      if (l == k) lin_add(res, make_word(zr, s), CycloScalar(1, -1L));
    }
  }
  return ly_.emplace(std::move(key), std::move(res)).first->second;
}

Lin KLRAlgebra::apply_q(int k, const std::string& t, const Perm& z, const std::string& s) {
  Lin res;
  const Poly2& Q = q_(static_cast<unsigned char>(t[k]), static_cast<unsigned char>(t[k + 1]));
  int m = static_cast<int>(s.size());
  Lin base = single(make_word(z, s), one());
  for (const auto& [e, c] : Q) {
    std::string beta = zeros(m);
    beta[k] = static_cast<char>(e.first);
    beta[k + 1] = static_cast<char>(e.second);
    lin_add(res, left_y_monomial(beta, base), c);
  }
  return res;
}

Lin KLRAlgebra::divided_difference(int p, const std::string& t, const Perm& z, const std::string& s) {
  Lin res;
  const Poly2& Q = q_(static_cast<unsigned char>(t[p]), static_cast<unsigned char>(t[p + 1]));
  int m = static_cast<int>(s.size());
  Lin base = single(make_word(z, s), one());
  for (const auto& [e, c] : Q) {
    for (int x = 0; x < e.first; ++x) {
      std::string beta = zeros(m);
      beta[p] = static_cast<char>(x);
      beta[p + 2] = static_cast<char>(e.first - 1 - x);
      beta[p + 1] = static_cast<char>(e.second);
      lin_add(res, left_y_monomial(beta, base), c);
    }
  }
  return res;
}

const Lin& KLRAlgebra::left_tau(int k, const Perm& z, const std::string& s) {
  std::string key = static_cast<char>(k) + z + s;
  auto it = lt_.find(key);
  if (it != lt_.end()) return it->second;
  int m = static_cast<int>(s.size());
  if (k < 0 || k + 1 >= m) throw DomainError("crossing index out of range");
  Lin res;
  Perm z2 = perm::left_mul(k, z);
  if (!perm::is_left_descent(k, z)) {
    Word W = static_cast<char>(k) + perm::canonical_word(z);
    Word C = perm::canonical_word(z2);
    lin_add(res, make_word(z2, s), one());
    if (W != C) lin_add(res, diff(W, C, s), one());
  } else {
    Word A = perm::canonical_word(z);
    Word B = static_cast<char>(k) + perm::canonical_word(z2);
    std::string t = perm::act(z2, s);
    res = apply_q(k, t, z2, s);
    if (A != B) lin_add(res, left_tau_lin(k, diff(A, B, s)), one());
  }
  return lt_.emplace(std::move(key), std::move(res)).first->second;
}

Lin KLRAlgebra::diff(const Word& A, const Word& B, const std::string& s) {
  if (A == B) return {};
  std::string key = static_cast<char>(A.size()) + A + B + s;
  auto it = diff_.find(key);
  if (it != diff_.end()) return it->second;
  int m = static_cast<int>(s.size());
  Lin res;
  if (A[0] == B[0]) {
    res = left_tau_lin(A[0], diff(A.substr(1), B.substr(1), s));
  } else {
    int a = A[0], k = B[0];
    int len = std::abs(a - k) > 1 ? 2 : 3;
    auto alt = [&](int x, int y) {
      Word w;
      for (int r = 0; r < len; ++r) w.push_back(static_cast<char>(r % 2 ? y : x));
      return w;
    };
    Word AK = alt(a, k), KA = alt(k, a);
    Perm w = perm::from_word(A, m);
    Perm rest = perm::compose(perm::inverse(perm::from_word(AK, m)), w);
    Word T = perm::canonical_word(rest);
    Word C = AK + T, C2 = KA + T;
    res = diff(A, C, s);
    lin_add(res, diff(C2, B, s), one());
    if (len == 3) {
      std::string t = perm::act(rest, s);
      int p = k == a + 1 ? a : a - 1;
      CycloScalar sign(1, k == a + 1 ? -1L : 1L);
      if (t[p] == t[p + 2]) lin_add(res, divided_difference(p, t, rest, s), sign);
    }
  }
  return diff_.emplace(std::move(key), std::move(res)).first->second;
}

Lin KLRAlgebra::word_nf(const Word& w, const std::string& s) {
  Lin x = single(make_word(perm::identity(static_cast<int>(s.size())), s), one());
  for (auto it = w.rbegin(); it != w.rend(); ++it) x = left_tau_lin(*it, x);
  return x;
}

KLRElement KLRAlgebra::multiply(const KLRElement& x, const KLRElement& y) {
  KLRElement r;
  r.m = x.is_zero() ? y.m : x.m;
  if (x.is_zero() || y.is_zero()) return r;
  if (x.m != y.m) throw DomainError("multiplying elements of different weights");
  std::map<std::string, std::vector<const std::pair<const NormalWord, CycloScalar>*>> by_right;
  for (const auto& t : x.terms) by_right[t.first.s].push_back(&t);
  for (const auto& [w2, c2] : y.terms) {
    std::string left = perm::act(w2.z, w2.s);
    auto it = by_right.find(left);
    if (it == by_right.end()) continue;
    Lin base = single(make_word(w2.z, w2.s), one());
    for (const auto* t1 : it->second) {
      Lin cur = left_y_monomial(t1->first.beta, base);
      Word W = perm::canonical_word(t1->first.z);
      for (auto l = W.rbegin(); l != W.rend(); ++l) cur = left_tau_lin(*l, cur);
      lin_add(r.terms, times_dots(cur, w2.beta), t1->second * c2);
    }
  }
  return r;
}

int KLRAlgebra::degree(const NormalWord& w) const {
  int deg = 0;
  std::string t = w.s;
  Word W = perm::canonical_word(w.z);
  for (int r = static_cast<int>(W.size()) - 1; r >= 0; --r) {
    int k = W[r];
    deg -= datum_.dot[static_cast<unsigned char>(t[k])][static_cast<unsigned char>(t[k + 1])];
    std::swap(t[k], t[k + 1]);
  }
  for (size_t p = 0; p < w.s.size(); ++p) {
    int i = static_cast<unsigned char>(w.s[p]);
    deg += static_cast<unsigned char>(w.beta[p]) * datum_.dot[i][i];
  }
  return deg;
}

DegreeInfo KLRAlgebra::degree(const KLRElement& x) const {
  DegreeInfo info;
  bool first = true;
  for (const auto& [w, c] : x.terms) {
    int d = degree(w);
    if (first) info.degree = d;
    else if (d != info.degree) info.homogeneous = false;
    first = false;
  }
  return info;
}

KLRElement KLRAlgebra::apply_a(const KLRElement& x) const {
  KLRElement r;
  r.m = x.m;
  for (const auto& [w, c] : x.terms) {
    NormalWord v = w;
    for (auto& ch : v.s) ch = static_cast<char>(aut_(static_cast<unsigned char>(ch)));
    lin_add(r.terms, v, c);
  }
  return r;
}

KLRElement KLRAlgebra::apply_psi(const KLRElement& x) {
  KLRElement r;
  r.m = x.m;
  for (const auto& [w, c] : x.terms) {
    Word W = perm::canonical_word(w.z);
    std::string u = perm::act(w.z, w.s);
    Lin cur = single(make_word(perm::identity(x.m), u), one());
    for (char k : W) cur = left_tau_lin(k, cur);
    cur = left_y_monomial(w.beta, cur);
    lin_add(r.terms, cur, c);
  }
  return r;
}

KLRElement KLRAlgebra::apply_sigma(const KLRElement& x) {
  KLRElement r;
  r.m = x.m;
  int m = x.m;
  for (const auto& [w, c] : x.terms) {
    Word W = perm::canonical_word(w.z);
    NormalWord start = make_word(perm::identity(m), std::string(w.s.rbegin(), w.s.rend()));
    start.beta.assign(w.beta.rbegin(), w.beta.rend());
    Lin cur = single(start, one());
    for (auto l = W.rbegin(); l != W.rend(); ++l) cur = left_tau_lin(m - 2 - *l, cur);
    lin_add(r.terms, cur, W.size() % 2 ? -c : c);
  }
  return r;
}

// ---------------------------------------------------------------------------
// relation suite

namespace {

std::string lab_seq(const CartanDatum& d, const std::string& s) {
  std::string out = "(";
  for (size_t p = 0; p < s.size(); ++p) out += (p ? "," : "") + d.labels[static_cast<unsigned char>(s[p])];
  return out + ")";
}

}  // namespace

RelationReport KLRAlgebra::relation_suite(const Weight& nu) {
  RelationReport rep;
  std::vector<Seq> seqs = seq_enumerate(nu);
  int m = height(nu);
  auto check = [&](const KLRElement& lhs, const KLRElement& rhs, const std::string& what) {
    ++rep.checked;
    if (!(lhs == rhs)) rep.failures.push_back(what + ": " + str(lhs) + " != " + str(rhs));
  };
  KLRElement zero;
  zero.m = m;
  auto mul = [&](std::initializer_list<KLRElement> fs) {
    KLRElement acc = *fs.begin();
    for (auto it = fs.begin() + 1; it != fs.end(); ++it) acc = multiply(acc, *it);
    return acc;
  };
  for (const Seq& i : seqs) {
    std::string s(i.begin(), i.end());
    std::string tag = lab_seq(datum_, s);
    KLRElement e = idem(i);
    for (const Seq& j : seqs) check(multiply(e, idem(j)), i == j ? e : zero, "e_i e_j " + tag);
    for (int k = 0; k < m; ++k) {
      check(multiply(y(k, i), e), y(k, i), "y e = e y " + tag);
      check(multiply(e, y(k, i)), y(k, i), "e y = y " + tag);
      for (int l = 0; l < m; ++l)
        check(mul({y(k, i), y(l, i)}), mul({y(l, i), y(k, i)}), "y y commute " + tag);
    }
    for (int k = 0; k + 1 < m; ++k) {
      Seq sk = i;
      std::swap(sk[k], sk[k + 1]);
      check(mul({tau(k, i), e}), mul({idem(sk), tau(k, i)}), "tau e routing " + tag);
      // quadratic relation
      KLRElement rhs;
      rhs.m = m;
      for (const auto& [ex, c] : q_(i[k], i[k + 1])) {
        NormalWord w = make_word(perm::identity(m), s);
        w.beta[k] = static_cast<char>(ex.first);
        w.beta[k + 1] = static_cast<char>(ex.second);
        lin_add(rhs.terms, w, c);
      }
      check(mul({tau(k, sk), tau(k, i)}), rhs, "tau^2 = Q " + tag);
      for (int l = 0; l + 1 < m; ++l)
        if (std::abs(k - l) > 1) {
          Seq sl = i;
          std::swap(sl[l], sl[l + 1]);
          check(mul({tau(k, sl), tau(l, i)}), mul({tau(l, sk), tau(k, i)}), "distant tau commute " + tag);
        }
      for (int l = 0; l < m; ++l) {
        int sl = l == k ? k + 1 : (l == k + 1 ? k : l);
        KLRElement lhs = mul({tau(k, i), y(l, i)}) - mul({y(sl, sk), tau(k, i)});
        KLRElement r = zero;
        if (i[k] == i[k + 1] && l == k) r = CycloScalar(1, -1L) * e;
        if (i[k] == i[k + 1] && l == k + 1) r = e;
        check(lhs, r, "tau y relation " + tag);
      }
      if (k + 2 < m) {
        // i -> s_{k+1} i -> s_k s_{k+1} i etc.
        auto sw = [](Seq x, int p) {
          std::swap(x[p], x[p + 1]);
          return x;
        };
        Seq a1 = sw(i, k + 1), a2 = sw(a1, k);
        KLRElement lhs1 = mul({tau(k + 1, a2), tau(k, a1), tau(k + 1, i)});
        Seq b1 = sw(i, k), b2 = sw(b1, k + 1);
        KLRElement lhs2 = mul({tau(k, b2), tau(k + 1, b1), tau(k, i)});
        KLRElement r = zero;
        if (i[k] == i[k + 2]) {
          for (const auto& [ex, c] : q_(i[k], i[k + 1]))
            for (int x = 0; x < ex.first; ++x) {
              NormalWord w = make_word(perm::identity(m), s);
              w.beta[k] = static_cast<char>(x);
              w.beta[k + 2] = static_cast<char>(ex.first - 1 - x);
              w.beta[k + 1] = static_cast<char>(ex.second);
              lin_add(r.terms, w, c);
            }
        }
        check(lhs1 - lhs2, r, "braid relation " + tag);
      }
    }
  }
  return rep;
}

RelationReport KLRAlgebra::associativity(const Weight& nu, int triples, unsigned seed, int max_dots) {
  RelationReport rep;
  std::mt19937 rng(seed);
  std::vector<Seq> seqs = seq_enumerate(nu);
  int m = height(nu);
  std::vector<Perm> perms = perm::all(m);
  auto pick = [&](const std::string& s) {
    NormalWord w;
    w.z = perms[std::uniform_int_distribution<size_t>(0, perms.size() - 1)(rng)];
    w.s = s;
    w.beta = zeros(m);
    int dots = std::uniform_int_distribution<int>(0, max_dots)(rng);
    for (int d = 0; d < dots; ++d) ++w.beta[std::uniform_int_distribution<int>(0, m - 1)(rng)];
    return w;
  };
  for (int t = 0; t < triples; ++t) {
    const Seq& s3 = seqs[std::uniform_int_distribution<size_t>(0, seqs.size() - 1)(rng)];
    NormalWord w3 = pick(std::string(s3.begin(), s3.end()));
    NormalWord w2 = pick(perm::act(w3.z, w3.s));
    NormalWord w1 = pick(perm::act(w2.z, w2.s));
    KLRElement a = basis(w1), b = basis(w2), c = basis(w3);
    KLRElement l = multiply(multiply(a, b), c);
    KLRElement r = multiply(a, multiply(b, c));
    ++rep.checked;
    if (!(l == r)) rep.failures.push_back("associativity failed on triple " + std::to_string(t));
  }
  return rep;
}

std::string lin_str(const CartanDatum& d, const Lin& x) {
  if (x.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : x) {
    if (!first) os << " + ";
    first = false;
    if (!c.is_one()) os << c.str() << "*";
    Word W = perm::canonical_word(w.z);
    for (char k : W) os << "t" << static_cast<int>(k) + 1;
    for (size_t p = 0; p < w.beta.size(); ++p) {
      int e = static_cast<unsigned char>(w.beta[p]);
      if (e == 0) continue;
      os << "y" << p + 1;
      if (e > 1) os << "^" << e;
    }
    os << "e" << lab_seq(d, w.s);
  }
  return os.str();
}

std::string KLRAlgebra::str(const KLRElement& x) const { return lin_str(datum_, x.terms); }

}  // namespace klrfold
