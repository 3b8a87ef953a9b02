#include "klrfold/falgebra.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "klrfold/errors.hpp"

namespace klrfold {

namespace {

RationalScalar rat(const LaurentScalar& p) { return RationalScalar::from_laurent(p); }
RationalScalar qpow(int e) { return rat(LaurentScalar::qpow(e)); }

std::string word_name(const JWord& w, const std::vector<std::string>& names) {
  if (w.empty()) return "1";
  bool single = std::all_of(names.begin(), names.end(), [](const std::string& s) { return s.size() == 1; });
  std::string out;
  for (size_t k = 0; k < w.size(); ++k) {
    if (k && !single) out += '.';
    out += (w[k] < static_cast<int>(names.size())) ? names[w[k]] : std::to_string(w[k]);
  }
  return out;
}

JWord concat(const JWord& a, const JWord& b) {
  JWord r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

std::vector<int> unit_index(const std::vector<RationalScalar>& c) {
  std::vector<int> nz;
  for (size_t k = 0; k < c.size(); ++k)
    if (!c[k].is_zero()) nz.push_back(static_cast<int>(k));
  return nz;
}

}  // namespace

// ---------------------------------------------------------------- elements

FreeElement FreeElement::word(JWord w) {
  FreeElement e;
  e.terms[std::move(w)] = RationalScalar::integer(1);
  return e;
}

void FreeElement::add(const JWord& w, const RationalScalar& c) {
  if (c.is_zero()) return;
  auto it = terms.find(w);
  if (it == terms.end()) {
    terms.emplace(w, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms.erase(it);
}

FreeElement& FreeElement::operator+=(const FreeElement& o) {
  for (const auto& [w, c] : o.terms) add(w, c);
  return *this;
}

FreeElement FreeElement::operator-() const {
  FreeElement r;
  for (const auto& [w, c] : terms) r.terms.emplace(w, -c);
  return r;
}

FreeElement operator*(const RationalScalar& c, const FreeElement& x) {
  FreeElement r;
  if (c.is_zero()) return r;
  for (const auto& [w, a] : x.terms) r.terms.emplace(w, c * a);
  return r;
}

std::string FreeElement::str(const std::vector<std::string>& names) const {
  if (terms.empty()) return "0";
  std::string out;
  for (const auto& [w, c] : terms) {
    if (!out.empty()) out += " + ";
    out += "(" + c.str() + ")*" + word_name(w, names);
  }
  return out;
}

void TensorElement::add(const JWord& a, const JWord& b, const RationalScalar& c) {
  if (c.is_zero()) return;
  auto key = std::make_pair(a, b);
  auto it = terms.find(key);
  if (it == terms.end()) {
    terms.emplace(key, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms.erase(it);
}

TensorElement& TensorElement::operator+=(const TensorElement& o) {
  for (const auto& [k, c] : o.terms) add(k.first, k.second, c);
  return *this;
}

LaurentScalar DualElement::at(const JWord& w) const {
  auto it = values.find(w);
  return it == values.end() ? LaurentScalar() : it->second;
}

bool AxiomReport::ok() const {
  return std::all_of(passed.begin(), passed.end(), [](bool b) { return b; });
}

void AxiomReport::set(int k, bool v, const std::string& why) {
  if (v) return;
  passed[k] = false;
  if (failures.size() < 50) failures.push_back(names[k] + ": " + why);
}

// ---------------------------------------------------------------- linear algebra

namespace ratlin {

std::vector<int> rref(Matrix& a) {
  std::vector<int> piv;
  if (a.empty()) return piv;
  const int rows = static_cast<int>(a.size()), cols = static_cast<int>(a[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (!a[i][c].is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(a[p], a[r]);
    RationalScalar inv = a[r][c].inverse();
    for (int k = c; k < cols; ++k) a[r][k] = a[r][k] * inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      RationalScalar f = a[i][c];
      for (int k = c; k < cols; ++k)
        if (!a[r][k].is_zero()) a[i][k] = a[i][k] - f * a[r][k];
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

int rank(Matrix a) { return static_cast<int>(rref(a).size()); }

std::vector<std::vector<RationalScalar>> nullspace(Matrix a, int cols) {
  std::vector<int> piv = rref(a);
  std::vector<bool> is_piv(cols, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<std::vector<RationalScalar>> out;
  for (int f = 0; f < cols; ++f) {
    if (is_piv[f]) continue;
    std::vector<RationalScalar> v(cols);
    v[f] = RationalScalar::integer(1);
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a[r][f];
    out.push_back(std::move(v));
  }
  return out;
}

bool solve(const Matrix& a, const std::vector<RationalScalar>& b, std::vector<RationalScalar>& x) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  Matrix aug(rows);
  for (int i = 0; i < rows; ++i) {
    aug[i] = a[i];
    aug[i].push_back(b[i]);
  }
  if (rows == 0) {
    x.assign(cols, RationalScalar());
    return true;
  }
  std::vector<int> piv = rref(aug);
  if (!piv.empty() && piv.back() == cols) return false;
  x.assign(cols, RationalScalar());
  for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug[r][cols];
  return true;
}

}  // namespace ratlin

int bareiss_rank(std::vector<std::vector<PolyZ>> m) {
  const int rows = static_cast<int>(m.size());
  if (rows == 0) return 0;
  const int cols = static_cast<int>(m[0].size());
  PolyZ prev{Int(1)};
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (!m[i][c].empty()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(m[p], m[r]);
    for (int i = r + 1; i < rows; ++i) {
      for (int k = c + 1; k < cols; ++k) {
        PolyZ t = polyz::sub(polyz::mul(m[i][k], m[r][c]), polyz::mul(m[i][c], m[r][k]));
        m[i][k] = polyz::divexact(t, prev);
      }
      m[i][c].clear();
    }
    prev = m[r][c];
    ++r;
  }
  return r;
}

// ---------------------------------------------------------------- FAlgebra

FAlgebra::FAlgebra(const CartanDatum& datum, int twist) : datum_(datum), twist_(twist < 0 ? -1 : 1) {}

Weight FAlgebra::content(const JWord& w) const {
  Weight nu(rank(), 0);
  for (int j : w) {
    if (j < 0 || j >= rank()) throw DomainError("letter out of range in word");
    ++nu[j];
  }
  return nu;
}

std::vector<JWord> FAlgebra::words(const Weight& nu) const {
  JWord w;
  for (int j = 0; j < rank(); ++j) w.insert(w.end(), nu[j], j);
  std::vector<JWord> out;
  do out.push_back(w);
  while (std::next_permutation(w.begin(), w.end()));
  return out;
}

FreeElement FAlgebra::multiply(const FreeElement& x, const FreeElement& y) const {
  FreeElement r;
  for (const auto& [a, c] : x.terms)
    for (const auto& [b, d] : y.terms) r.add(concat(a, b), c * d);
  return r;
}

TensorElement FAlgebra::twisted_multiply(const TensorElement& s, const TensorElement& t) const {
  TensorElement r;
  for (const auto& [x, c] : s.terms)
    for (const auto& [y, d] : t.terms) {
      int e = twist_ * datum_.pair(content(x.second), content(y.first));
      r.add(concat(x.first, y.first), concat(x.second, y.second), qpow(e) * c * d);
    }
  return r;
}

TensorElement FAlgebra::coproduct(const FreeElement& x) const {
  TensorElement r;
  for (const auto& [w, c] : x.terms) {
    const int n = static_cast<int>(w.size());
    for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
      JWord left, right;
      int e = 0;
      for (int b = 0; b < n; ++b) {
        if (mask >> b & 1UL) {
          left.push_back(w[b]);
          for (int a = 0; a < b; ++a)
            if (!(mask >> a & 1UL)) e += twist_ * datum_.dot[w[a]][w[b]];
        } else {
          right.push_back(w[b]);
        }
      }
      r.add(left, right, qpow(e) * c);
    }
  }
  return r;
}

std::map<std::vector<JWord>, RationalScalar> FAlgebra::coproduct_left_iterate(const FreeElement& x) const {
  std::map<std::vector<JWord>, RationalScalar> out;
  for (const auto& [k, c] : coproduct(x).terms)
    for (const auto& [k2, d] : coproduct(FreeElement::word(k.first)).terms) {
      auto& slot = out[{k2.first, k2.second, k.second}];
      slot = slot + c * d;
    }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

std::map<std::vector<JWord>, RationalScalar> FAlgebra::coproduct_right_iterate(const FreeElement& x) const {
  std::map<std::vector<JWord>, RationalScalar> out;
  for (const auto& [k, c] : coproduct(x).terms)
    for (const auto& [k2, d] : coproduct(FreeElement::word(k.second)).terms) {
      auto& slot = out[{k.first, k2.first, k2.second}];
      slot = slot + c * d;
    }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

const LaurentScalar& FAlgebra::form_numerator(const JWord& w, const JWord& wp) const {
  auto key = std::make_pair(w, wp);
  auto it = numer_cache_.find(key);
  if (it != numer_cache_.end()) return it->second;
  LaurentScalar val;
  if (w.size() != wp.size()) {
    // zero
  } else if (wp.empty()) {
    val = LaurentScalar::constant(1);
  } else if (content(w) == content(wp)) {
    const int j = wp.back();
    JWord head(wp.begin(), wp.end() - 1);
    for (size_t p = 0; p < w.size(); ++p) {
      if (w[p] != j) continue;
      int e = 0;
      for (size_t b = p + 1; b < w.size(); ++b) e += twist_ * datum_.dot[j][w[b]];
      JWord rest = w;
      rest.erase(rest.begin() + static_cast<long>(p));
      const LaurentScalar& sub = form_numerator(rest, head);
      if (!sub.is_zero()) val += sub.shifted(e);
    }
  }
  return numer_cache_.emplace(key, std::move(val)).first->second;
}

LaurentScalar FAlgebra::form_denominator(const Weight& nu) const {
  LaurentScalar d = LaurentScalar::constant(1);
  for (int j = 0; j < rank(); ++j)
    for (int k = 0; k < nu[j]; ++k) d *= LaurentScalar::constant(1) - LaurentScalar::qpow(datum_.dot[j][j]);
  return d;
}

RationalScalar FAlgebra::form(const FreeElement& x, const FreeElement& y) const {
  std::map<Weight, RationalScalar> by_weight;
  for (const auto& [a, c] : x.terms) {
    Weight nu = content(a);
    for (const auto& [b, d] : y.terms) {
      if (content(b) != nu) continue;
      const LaurentScalar& n = form_numerator(a, b);
      if (n.is_zero()) continue;
      auto& slot = by_weight[nu];
      slot = slot + c * d * rat(n);
    }
  }
  RationalScalar total;
  for (const auto& [nu, s] : by_weight) total = total + s / rat(form_denominator(nu));
  return total;
}

RationalScalar FAlgebra::form(const TensorElement& s, const TensorElement& t) const {
  RationalScalar total;
  for (const auto& [x, c] : s.terms)
    for (const auto& [y, d] : t.terms) {
      RationalScalar a = form(FreeElement::word(x.first), FreeElement::word(y.first));
      if (a.is_zero()) continue;
      total = total + c * d * a * form(FreeElement::word(x.second), FreeElement::word(y.second));
    }
  return total;
}

GramData FAlgebra::gram(const Weight& nu) const {
  GramData g;
  g.nu = nu;
  g.words = words(nu);
  g.denominator = form_denominator(nu);
  const int n = g.dim_free();
  g.numerator.assign(n, std::vector<LaurentScalar>(n));
  int lo = 0;
  bool any = false;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      g.numerator[a][b] = form_numerator(g.words[a], g.words[b]);
      if (!g.numerator[a][b].is_zero()) {
        lo = any ? std::min(lo, g.numerator[a][b].min_exponent()) : g.numerator[a][b].min_exponent();
        any = true;
      }
    }
  std::vector<std::vector<PolyZ>> pm(n, std::vector<PolyZ>(n));
  ratlin::Matrix rm(n, std::vector<RationalScalar>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (g.numerator[a][b].is_zero()) continue;
      int shift = 0;
      PolyZ p = g.numerator[a][b].to_poly(&shift);
      p.insert(p.begin(), shift - lo, Int(0));
      pm[a][b] = std::move(p);
      rm[a][b] = rat(g.numerator[a][b]);
    }
  g.rank = bareiss_rank(pm);
  for (auto& v : ratlin::nullspace(rm, n)) {
    FreeElement e;
    for (int k = 0; k < n; ++k) e.add(g.words[k], v[k]);
    g.kernel.push_back(std::move(e));
  }
  if (g.rank + static_cast<int>(g.kernel.size()) != n) throw DomainError("Gram rank and kernel disagree");
  return g;
}

int FAlgebra::dim_f(const Weight& nu) const { return gram(nu).rank; }

FreeElement FAlgebra::divided_power(int j, int n) const {
  return rat(qfactorial(n, datum_.d(j))).inverse() * FreeElement::word(JWord(n, j));
}

FreeElement FAlgebra::divided_power_monomial(const std::vector<int>& c, const std::vector<int>& jseq) const {
  if (c.size() != jseq.size()) throw DomainError("exponent and index lists differ in length");
  FreeElement r = one();
  for (size_t k = 0; k < c.size(); ++k) r = multiply(r, divided_power(jseq[k], c[k]));
  return r;
}

FreeElement FAlgebra::r_derivation(const FreeElement& x, int j, int p, bool right) const {
  const JWord jp(p, j);
  FreeElement r;
  for (const auto& [k, c] : coproduct(x).terms) {
    if (right ? k.second == jp : k.first == jp) r.add(right ? k.first : k.second, c);
  }
  return r;
}

FreeElement FAlgebra::bar(const FreeElement& x) const {
  FreeElement r;
  for (const auto& [w, c] : x.terms) r.add(w, c.bar());
  return r;
}

FreeElement FAlgebra::sigma(const FreeElement& x) const {
  FreeElement r;
  for (const auto& [w, c] : x.terms) r.add(JWord(w.rbegin(), w.rend()), c);
  return r;
}

std::vector<RationalScalar> FAlgebra::pairing_vector(const FreeElement& x, const Weight& nu) const {
  std::vector<JWord> ws = words(nu);
  RationalScalar inv = rat(form_denominator(nu)).inverse();
  std::vector<RationalScalar> out(ws.size());
  for (size_t k = 0; k < ws.size(); ++k) {
    RationalScalar s;
    for (const auto& [w, c] : x.terms) {
      if (w.size() != ws[k].size()) continue;
      const LaurentScalar& n = form_numerator(w, ws[k]);
      if (!n.is_zero()) s = s + c * rat(n);
    }
    out[k] = s * inv;
  }
  return out;
}

std::vector<Weight> FAlgebra::weights(const FreeElement& x) const {
  std::set<Weight> s;
  for (const auto& [w, c] : x.terms) s.insert(content(w));
  return {s.begin(), s.end()};
}

bool FAlgebra::in_radical(const FreeElement& x) const {
  for (const Weight& nu : weights(x))
    for (const auto& v : pairing_vector(x, nu))
      if (!v.is_zero()) return false;
  return true;
}

RationalScalar FAlgebra::evaluate(const DualElement& phi, const FreeElement& x) const {
  RationalScalar s;
  for (const auto& [w, c] : x.terms) {
    auto it = phi.values.find(w);
    if (it != phi.values.end()) s = s + c * rat(it->second);
  }
  return s;
}

DualElement FAlgebra::dual_r(const DualElement& phi, int j, int p) const {
  DualElement r;
  r.nu = phi.nu;
  if (p > phi.nu[j]) {
    r.nu[j] -= p;  // no words; zero functional on a negative weight
    return r;
  }
  r.nu[j] -= p;
  LaurentScalar fact = qfactorial(p, datum_.d(j));
  const JWord jp(p, j);
  for (const JWord& z : words(r.nu)) {
    LaurentScalar v = phi.at(concat(jp, z));
    if (!v.is_zero()) r.values[z] = v.divexact(fact);
  }
  return r;
}

DualElement FAlgebra::dual_sigma(const DualElement& phi) const {
  DualElement r;
  r.nu = phi.nu;
  for (const auto& [w, v] : phi.values) r.values[JWord(w.rbegin(), w.rend())] = v;
  return r;
}

DualElement FAlgebra::dual_bar(const DualElement& phi) const {
  DualElement r;
  r.nu = phi.nu;
  for (const auto& [w, v] : phi.values) r.values[w] = v.bar();
  return r;
}

bool FAlgebra::factors_through_f(const DualElement& phi) const {
  for (const FreeElement& k : gram(phi.nu).kernel)
    if (!evaluate(phi, k).is_zero()) return false;
  return true;
}

// ---------------------------------------------------------------- basis axioms

namespace {

const std::vector<std::string> kCanNames = {
    "(a) homogeneous basis", "(b) contains 1",  "(c) ideal spanned by subset",
    "(d) divided powers permute", "(e) sigma-stable", "(f) bar-stable"};

AxiomReport fresh_report() {
  AxiomReport r;
  r.names = kCanNames;
  r.passed.assign(kCanNames.size(), true);
  return r;
}

std::string wstr(const Weight& nu) {
  std::string s = "(";
  for (size_t k = 0; k < nu.size(); ++k) s += (k ? "," : "") + std::to_string(nu[k]);
  return s + ")";
}


}  // namespace

AxiomReport FAlgebra::canonical_type_check(const std::vector<FreeElement>& basis, int max_height) const {
  AxiomReport rep = fresh_report();
  const int r = rank();

  // Group by weight and precompute pairing vectors.
  std::map<Weight, std::vector<int>> by_weight;
  for (size_t k = 0; k < basis.size(); ++k) {
    auto ws = weights(basis[k]);
    if (ws.size() != 1) {
      rep.set(0, false, "element " + std::to_string(k) + " is not homogeneous");
      continue;
    }
    if (height(ws[0]) <= max_height) by_weight[ws[0]].push_back(static_cast<int>(k));
  }
  std::map<int, std::vector<RationalScalar>> pv;
  for (const auto& [nu, idx] : by_weight)
    for (int k : idx) pv[k] = pairing_vector(basis[k], nu);

  auto coords = [&](const FreeElement& x, const Weight& nu, std::vector<RationalScalar>& c) {
    const auto& idx = by_weight[nu];
    std::vector<RationalScalar> target = pairing_vector(x, nu);
    ratlin::Matrix a(target.size(), std::vector<RationalScalar>(idx.size()));
    for (size_t col = 0; col < idx.size(); ++col)
      for (size_t row = 0; row < target.size(); ++row) a[row][col] = pv[idx[col]][row];
    return ratlin::solve(a, target, c);
  };
  auto span_rank = [&](const std::vector<std::vector<RationalScalar>>& vs) {
    return ratlin::rank(ratlin::Matrix(vs.begin(), vs.end()));
  };

  for (int h = 0; h <= max_height; ++h)
    for (const Weight& nu : weights_of_height(r, h)) {
      const auto& idx = by_weight[nu];
      std::vector<std::vector<RationalScalar>> vs;
      for (int k : idx) vs.push_back(pv[k]);
      int d = dim_f(nu);
      if (static_cast<int>(idx.size()) != d || (d && span_rank(vs) != d))
        rep.set(0, false, "not a basis of f" + wstr(nu));
    }

  // (b)
  {
    Weight zero(r, 0);
    const auto& idx = by_weight[zero];
    bool ok = idx.size() == 1 && equal_in_f(basis[idx[0]], one());
    rep.set(1, ok, "1 is not in the basis");
  }

  // In-ideal membership: b in theta_j^p f.
  auto ideal_gens = [&](const Weight& nu, int j, int p) {
    Weight mu = nu;
    mu[j] -= p;
    std::vector<std::vector<RationalScalar>> gens;
    for (const JWord& z : words(mu)) gens.push_back(pairing_vector(FreeElement::word(concat(JWord(p, j), z)), nu));
    return gens;
  };
  auto members = [&](const Weight& nu, int j, int p, int* dim) {
    std::vector<int> s;
    if (nu[j] < p) {
      *dim = 0;
      return s;
    }
    auto gens = ideal_gens(nu, j, p);
    *dim = span_rank(gens);
    for (int k : by_weight[nu]) {
      auto g2 = gens;
      g2.push_back(pv[k]);
      if (span_rank(g2) == *dim) s.push_back(k);
    }
    return s;
  };

  for (int h = 1; h <= max_height; ++h)
    for (const Weight& nu : weights_of_height(r, h))
      for (int j = 0; j < r; ++j)
        for (int p = 1; p <= nu[j]; ++p) {
          int dim = 0;
          auto s = members(nu, j, p, &dim);
          rep.set(2, static_cast<int>(s.size()) == dim,
                  "theta_" + std::to_string(j) + "^" + std::to_string(p) + " f at " + wstr(nu));
          // (d): theta_j^{(p)} : f/theta_j f (weight nu - pj) -> theta_j^p f / theta_j^{p+1} f (weight nu)
          int dim1 = 0;
          auto s1 = members(nu, j, p + 1, &dim1);
          std::vector<int> target;
          for (int k : s)
            if (std::find(s1.begin(), s1.end(), k) == s1.end()) target.push_back(k);
          Weight mu = nu;
          mu[j] -= p;
          int dmu = 0;
          auto smu = members(mu, j, 1, &dmu);
          std::vector<int> domain;
          for (int k : by_weight[mu])
            if (std::find(smu.begin(), smu.end(), k) == smu.end()) domain.push_back(k);
          std::string where = "j=" + std::to_string(j) + " p=" + std::to_string(p) + " at " + wstr(nu);
          if (domain.size() != target.size()) {
            rep.set(3, false, "size mismatch " + where);
            continue;
          }
          std::set<int> hit;
          const auto& idx = by_weight[nu];
          for (int k : domain) {
            std::vector<RationalScalar> c;
            if (!coords(multiply(divided_power(j, p), basis[k]), nu, c)) {
              rep.set(3, false, "image outside span " + where);
              continue;
            }
            int found = -1;
            bool ok = true;
            for (size_t col = 0; col < idx.size(); ++col) {
              if (std::find(target.begin(), target.end(), idx[col]) == target.end() || c[col].is_zero()) continue;
              if (found >= 0 || c[col] != RationalScalar::integer(1)) ok = false;
              found = idx[col];
            }
            if (!ok || found < 0 || !hit.insert(found).second) rep.set(3, false, "not a permutation " + where);
          }
        }

  // (e), (f)
  for (const auto& [nu, idx] : by_weight)
    for (int k : idx)
      for (int cond : {4, 5}) {
        FreeElement img = cond == 4 ? sigma(basis[k]) : bar(basis[k]);
        std::vector<RationalScalar> c;
        bool ok = coords(img, nu, c);
        if (ok) {
          auto nz = unit_index(c);
          ok = nz.size() == 1 && c[nz[0]] == RationalScalar::integer(1);
        }
        rep.set(cond, ok, "element " + std::to_string(k) + " at " + wstr(nu));
      }
  return rep;
}

AxiomReport FAlgebra::dual_canonical_type_check(const std::vector<DualElement>& basis, int max_height) const {
  AxiomReport rep = fresh_report();
  rep.names[2] = "(c) kernels spanned by subset";
  rep.names[3] = "(d) derivations permute";
  const int r = rank();
  std::map<Weight, std::vector<int>> by_weight;
  for (size_t k = 0; k < basis.size(); ++k)
    if (height(basis[k].nu) <= max_height) by_weight[basis[k].nu].push_back(static_cast<int>(k));

  auto value_vec = [&](const DualElement& phi) {
    std::vector<RationalScalar> v;
    for (const JWord& w : words(phi.nu)) v.push_back(rat(phi.at(w)));
    return v;
  };
  auto coords = [&](const DualElement& phi, std::vector<RationalScalar>& c) {
    const auto& idx = by_weight[phi.nu];
    std::vector<RationalScalar> target = value_vec(phi);
    ratlin::Matrix a(target.size(), std::vector<RationalScalar>(idx.size()));
    for (size_t col = 0; col < idx.size(); ++col) {
      auto v = value_vec(basis[idx[col]]);
      for (size_t row = 0; row < target.size(); ++row) a[row][col] = v[row];
    }
    return ratlin::solve(a, target, c);
  };
  auto is_zero = [](const DualElement& phi) { return phi.values.empty(); };

  for (int h = 0; h <= max_height; ++h)
    for (const Weight& nu : weights_of_height(r, h)) {
      const auto& idx = by_weight[nu];
      ratlin::Matrix m;
      for (int k : idx) {
        m.push_back(value_vec(basis[k]));
        if (!factors_through_f(basis[k])) rep.set(0, false, "element " + std::to_string(k) + " not in f*");
      }
      int d = dim_f(nu);
      if (static_cast<int>(idx.size()) != d || (d && ratlin::rank(m) != d))
        rep.set(0, false, "not a basis of f*" + wstr(nu));
    }

  {
    const auto& idx = by_weight[Weight(r, 0)];
    bool ok = idx.size() == 1 && basis[idx[0]].at({}) == LaurentScalar::constant(1);
    rep.set(1, ok, "1 is not in the basis");
  }

  for (int h = 1; h <= max_height; ++h)
    for (const Weight& nu : weights_of_height(r, h))
      for (int j = 0; j < r; ++j) {
        const auto& idx = by_weight[nu];
        // eps_j of each element: largest p with r_{j^p} b != 0.
        std::vector<int> eps(idx.size(), 0);
        for (int p = 1; p <= nu[j]; ++p) {
          Weight mu = nu;
          mu[j] -= p;
          ratlin::Matrix m;
          int nzero = 0;
          for (size_t a = 0; a < idx.size(); ++a) {
            DualElement img = dual_r(basis[idx[a]], j, p);
            m.push_back(value_vec(img));
            if (is_zero(img))
              ++nzero;
            else
              eps[a] = p;
          }
          int kernel = static_cast<int>(idx.size()) - ratlin::rank(m);
          rep.set(2, nzero == kernel,
                  "ker r_" + std::to_string(j) + "^" + std::to_string(p) + " at " + wstr(nu));
        }
        // (d): b with eps_j = p maps under r_{j^p} bijectively, with coefficient 1, onto eps_j = 0 at nu - pj.
        for (int p = 1; p <= nu[j]; ++p) {
          Weight mu = nu;
          mu[j] -= p;
          std::set<int> target;
          for (int k : by_weight[mu])
            if (is_zero(dual_r(basis[k], j, 1))) target.insert(k);
          std::set<int> hit;
          int dom = 0;
          std::string where = "j=" + std::to_string(j) + " p=" + std::to_string(p) + " at " + wstr(nu);
          for (size_t a = 0; a < idx.size(); ++a) {
            if (eps[a] != p) continue;
            ++dom;
            std::vector<RationalScalar> c;
            if (!coords(dual_r(basis[idx[a]], j, p), c)) {
              rep.set(3, false, "image outside span " + where);
              continue;
            }
            auto nz = unit_index(c);
            const auto& midx = by_weight[mu];
            bool ok = nz.size() == 1 && c[nz[0]] == RationalScalar::integer(1) && target.count(midx[nz[0]]) &&
                      hit.insert(midx[nz[0]]).second;
            rep.set(3, ok, "not a permutation " + where);
          }
          rep.set(3, dom == static_cast<int>(target.size()), "size mismatch " + where);
        }
      }

  std::set<std::pair<Weight, std::map<JWord, LaurentScalar>>> members;
  for (const auto& b : basis) members.insert({b.nu, b.values});
  for (const auto& [nu, idx] : by_weight)
    for (int k : idx) {
      DualElement s = dual_sigma(basis[k]), b = dual_bar(basis[k]);
      rep.set(4, members.count({s.nu, s.values}) > 0, "element " + std::to_string(k) + " at " + wstr(nu));
      rep.set(5, members.count({b.nu, b.values}) > 0, "element " + std::to_string(k) + " at " + wstr(nu));
    }
  return rep;
}

std::vector<int> FAlgebra::hw_basis(const std::vector<int>& lambda, const std::vector<FreeElement>& basis,
                                    int max_height, std::vector<std::string>* failures) const {
  if (static_cast<int>(lambda.size()) != rank()) throw DomainError("highest weight has wrong length");
  for (int l : lambda)
    if (l < 0) throw DomainError("highest weight must be dominant");
  std::vector<int> out;
  for (size_t k = 0; k < basis.size(); ++k) {
    auto ws = weights(basis[k]);
    if (ws.size() != 1) throw DomainError("basis element is not homogeneous");
    const Weight& nu = ws[0];
    if (height(nu) > max_height) continue;
    std::vector<std::vector<RationalScalar>> gens;
    for (int j = 0; j < rank(); ++j) {
      int e = lambda[j] + 1;
      if (nu[j] < e) continue;
      Weight mu = nu;
      mu[j] -= e;
      for (const JWord& z : words(mu)) gens.push_back(pairing_vector(FreeElement::word(concat(z, JWord(e, j))), nu));
    }
    int dim = ratlin::rank(ratlin::Matrix(gens.begin(), gens.end()));
    gens.push_back(pairing_vector(basis[k], nu));
    if (ratlin::rank(ratlin::Matrix(gens.begin(), gens.end())) != dim) out.push_back(static_cast<int>(k));
  }
  if (failures) {
    // The annihilator must be spanned by the basis elements it contains.
    std::map<Weight, int> kept, total;
    for (size_t k = 0; k < basis.size(); ++k) {
      Weight nu = weights(basis[k])[0];
      if (height(nu) <= max_height) ++total[nu];
    }
    for (int k : out) ++kept[weights(basis[k])[0]];
    for (const auto& [nu, n] : total) {
      std::vector<std::vector<RationalScalar>> gens;
      for (int j = 0; j < rank(); ++j) {
        int e = lambda[j] + 1;
        if (nu[j] < e) continue;
        Weight mu = nu;
        mu[j] -= e;
        for (const JWord& z : words(mu)) gens.push_back(pairing_vector(FreeElement::word(concat(z, JWord(e, j))), nu));
      }
      int dim = ratlin::rank(ratlin::Matrix(gens.begin(), gens.end()));
      if (n - kept[nu] != dim) failures->push_back("annihilator not spanned by basis at " + wstr(nu));
    }
  }
  return out;
}

std::string FAlgebra::gram_csv(const GramData& g, const std::vector<std::string>& names) const {
  std::ostringstream os;
  os << "word";
  for (const JWord& w : g.words) os << ',' << word_name(w, names);
  os << '\n';
  RationalScalar den = rat(g.denominator);
  for (size_t a = 0; a < g.words.size(); ++a) {
    os << word_name(g.words[a], names);
    for (size_t b = 0; b < g.words.size(); ++b) os << ",\"" << (rat(g.numerator[a][b]) / den).str() << '"';
    os << '\n';
  }
  return os.str();
}

}  // namespace klrfold
