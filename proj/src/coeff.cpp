#include "klrfold/coeff.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "klrfold/errors.hpp"

namespace klrfold {

// ---------------------------------------------------------------------------
// PolyZ

namespace polyz {

void trim(PolyZ& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

PolyZ add(const PolyZ& a, const PolyZ& b) {
  PolyZ r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

PolyZ sub(const PolyZ& a, const PolyZ& b) {
  PolyZ r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

PolyZ mul(const PolyZ& a, const PolyZ& b) {
  if (a.empty() || b.empty()) return {};
  PolyZ r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

PolyZ scale(const PolyZ& a, const Int& c) {
  if (c == 0) return {};
  PolyZ r(a);
  for (auto& x : r) x *= c;
  return r;
}

int degree(const PolyZ& p) { return static_cast<int>(p.size()) - 1; }

Int content(const PolyZ& p) {
  Int g = 0;
  for (const auto& c : p) g = gcd(g, c);
  return g;
}

PolyZ primitive_part(const PolyZ& p) {
  if (p.empty()) return {};
  Int c = content(p);
  if (p.back() < 0) c = -c;
  PolyZ r(p);
  for (auto& x : r) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
  return r;
}

PolyZ divexact(const PolyZ& a, const PolyZ& b) {
  if (b.empty()) throw DomainError("polynomial division by zero");
  if (a.empty()) return {};
  if (a.size() < b.size()) throw DomainError("inexact polynomial division");
  PolyZ rem(a);
  PolyZ q(a.size() - b.size() + 1);
  const Int& lead = b.back();
  for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) {
    const Int& top = rem[i + b.size() - 1];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t()))
      throw DomainError("inexact polynomial division");
    Int c = top / lead;
    q[i] = c;
    for (size_t j = 0; j < b.size(); ++j) rem[i + j] -= c * b[j];
  }
  trim(rem);
  if (!rem.empty()) throw DomainError("inexact polynomial division");
  trim(q);
  return q;
}

namespace {
// Pseudo-remainder of a by b.
PolyZ prem(PolyZ a, const PolyZ& b) {
  const Int& lead = b.back();
  while (!a.empty() && a.size() >= b.size()) {
    size_t shift = a.size() - b.size();
    Int top = a.back();
    for (auto& x : a) x *= lead;
    for (size_t j = 0; j < b.size(); ++j) a[shift + j] -= top * b[j];
    trim(a);
  }
  return a;
}
}  // namespace

PolyZ gcd(const PolyZ& a0, const PolyZ& b0) {
  if (a0.empty()) return primitive_part(b0);
  if (b0.empty()) return primitive_part(a0);
  Int c = ::gcd(content(a0), content(b0));
  PolyZ a = primitive_part(a0), b = primitive_part(b0);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    PolyZ r = primitive_part(prem(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  return scale(primitive_part(a), c);
}

PolyZ cyclotomic(int n) {
  // x^n - 1 = prod_{d | n} Phi_d(x)
  PolyZ p(n + 1);
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) p = divexact(p, cyclotomic(d));
  return p;
}

std::string str(const PolyZ& p, const char* var) {
  if (p.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    Int c = p[i];
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    Int a = abs(c);
    if (i == 0 || a != 1) os << a;
    if (i > 0) {
      os << var;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

}  // namespace polyz

int euler_phi(int n) {
  int r = n;
  for (int p = 2, m = n; p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      r -= r / p;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// CycloScalar

namespace {

struct CycloTables {
  PolyZ phi;
  // zeta^k reduced, k = 0..n-1
  std::vector<std::vector<Int>> powers;
};

const CycloTables& tables(int n) {
  static std::mutex mu;
  static std::unordered_map<int, CycloTables> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  CycloTables t;
  t.phi = polyz::cyclotomic(n);
  int f = euler_phi(n);
  std::vector<Int> cur(f, 0);
  cur[0] = 1;
  for (int k = 0; k < n; ++k) {
    t.powers.push_back(cur);
    // multiply by zeta
    std::vector<Int> nxt(f, 0);
    for (int i = 0; i + 1 < f; ++i) nxt[i + 1] = cur[i];
    Int top = cur[f - 1];
    if (top != 0)
      for (int i = 0; i < f; ++i) nxt[i] -= top * t.phi[i];
    cur = std::move(nxt);
  }
  return cache.emplace(n, std::move(t)).first->second;
}

}  // namespace

CycloScalar::CycloScalar(int order) : order_(order), coeffs_(euler_phi(order), 0) {
  if (order < 1) throw DomainError("cyclotomic order must be positive");
}

CycloScalar::CycloScalar(int order, long value) : CycloScalar(order) { coeffs_[0] = value; }

CycloScalar::CycloScalar(int order, const Int& value) : CycloScalar(order) { coeffs_[0] = value; }

CycloScalar CycloScalar::zeta_power(int order, long k) {
  CycloScalar r(order);
  long m = ((k % order) + order) % order;
  r.coeffs_ = tables(order).powers[m];
  return r;
}

void CycloScalar::reduce_from(std::vector<Int> raw) {
  const PolyZ& phi = tables(order_).phi;
  int f = static_cast<int>(phi.size()) - 1;
  for (int i = static_cast<int>(raw.size()) - 1; i >= f; --i) {
    if (raw[i] == 0) continue;
    Int c = raw[i];
    for (int j = 0; j <= f; ++j) raw[i - f + j] -= c * phi[j];
  }
  raw.resize(f, 0);
  coeffs_ = std::move(raw);
}

bool CycloScalar::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Int& c) { return c == 0; });
}

bool CycloScalar::is_integer() const {
  for (size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

bool CycloScalar::is_one() const { return is_integer() && coeffs_[0] == 1; }

CycloScalar CycloScalar::conj() const {
  CycloScalar r(order_);
  const auto& pw = tables(order_).powers;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    const auto& z = pw[(order_ - static_cast<int>(i)) % order_];
    for (size_t j = 0; j < z.size(); ++j) r.coeffs_[j] += coeffs_[i] * z[j];
  }
  return r;
}

CycloScalar CycloScalar::lift_to(int m) const {
  if (m == order_) return *this;
  if (m % order_ != 0) throw DomainError("cannot embed Z[zeta_n] into Z[zeta_m] unless n | m");
  CycloScalar r(m);
  int step = m / order_;
  const auto& pw = tables(m).powers;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    const auto& z = pw[(i * step) % m];
    for (size_t j = 0; j < z.size(); ++j) r.coeffs_[j] += coeffs_[i] * z[j];
  }
  return r;
}

void CycloScalar::unify(const CycloScalar& o) {
  if (o.order_ == order_) return;
  int m = std::lcm(order_, o.order_);
  *this = lift_to(m);
}

CycloScalar CycloScalar::operator-() const {
  CycloScalar r(*this);
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

CycloScalar& CycloScalar::operator+=(const CycloScalar& o) {
  unify(o);
  CycloScalar b = o.lift_to(order_);
  for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += b.coeffs_[i];
  return *this;
}

CycloScalar& CycloScalar::operator-=(const CycloScalar& o) { return *this += -o; }

CycloScalar& CycloScalar::operator*=(const CycloScalar& o) {
  unify(o);
  CycloScalar b = o.lift_to(order_);
  if (coeffs_.size() == 1) {
    coeffs_[0] *= b.coeffs_[0];
    return *this;
  }
  std::vector<Int> raw(2 * coeffs_.size() - 1, 0);
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (size_t j = 0; j < b.coeffs_.size(); ++j) raw[i + j] += coeffs_[i] * b.coeffs_[j];
  }
  reduce_from(std::move(raw));
  return *this;
}

bool operator==(const CycloScalar& a, const CycloScalar& b) {
  if (a.order_ == b.order_) return a.coeffs_ == b.coeffs_;
  int m = std::lcm(a.order_, b.order_);
  return a.lift_to(m).coeffs_ == b.lift_to(m).coeffs_;
}

bool operator<(const CycloScalar& a, const CycloScalar& b) {
  if (a.order_ != b.order_) return a.order_ < b.order_;
  return a.coeffs_ < b.coeffs_;
}

bool CycloScalar::is_unit() const {
  try {
    (void)inverse();
    return true;
  } catch (const NotInvertibleError&) {
    return false;
  }
}

CycloScalar CycloScalar::inverse() const {
  if (is_zero()) throw NotInvertibleError("zero is not invertible");
  // Fast path: +-zeta^k.
  for (int k = 0; k < order_; ++k) {
    CycloScalar z = zeta_power(order_, k);
    if (z == *this) return zeta_power(order_, -k);
    if (-z == *this) return -zeta_power(order_, -k);
  }
  // General case: solve (x * this) = 1 over Q and check integrality.
  int f = static_cast<int>(coeffs_.size());
  std::vector<std::vector<mpq_class>> m(f, std::vector<mpq_class>(f + 1));
  for (int j = 0; j < f; ++j) {
    CycloScalar col = zeta_power(order_, j) * *this;
    for (int i = 0; i < f; ++i) m[i][j] = col.coeffs_[i];
  }
  m[0][f] = 1;
  for (int c = 0, r = 0; c < f; ++c, ++r) {
    int p = r;
    while (p < f && m[p][c] == 0) ++p;
    if (p == f) throw NotInvertibleError("singular multiplication matrix");
    std::swap(m[p], m[r]);
    for (int i = 0; i < f; ++i) {
      if (i == r || m[i][c] == 0) continue;
      mpq_class t = m[i][c] / m[r][c];
      for (int k = c; k <= f; ++k) m[i][k] -= t * m[r][k];
    }
  }
  CycloScalar r(order_);
  for (int i = 0; i < f; ++i) {
    mpq_class v = m[i][f] / m[i][i];
    if (v.get_den() != 1) throw NotInvertibleError("not a unit in Z[zeta_n]: " + str());
    r.coeffs_[i] = v.get_num();
  }
  return r;
}

std::string CycloScalar::str() const {
  if (is_integer()) return coeffs_[0].get_str();
  std::ostringstream os;
  os << "(";
  bool first = true;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    Int c = coeffs_[i];
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    Int a = abs(c);
    if (i == 0 || a != 1) os << a;
    if (i > 0) {
      os << "z" << order_;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  os << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// LaurentScalar

LaurentScalar::LaurentScalar(const CycloScalar& c, int exponent) : order_(c.order()) {
  if (!c.is_zero()) terms_.emplace(exponent, c);
}

LaurentScalar LaurentScalar::constant(long v, int order) {
  return LaurentScalar(CycloScalar(order, v), 0);
}

LaurentScalar LaurentScalar::qpow(int e, int order) {
  return LaurentScalar(CycloScalar(order, 1L), e);
}

LaurentScalar LaurentScalar::from_poly(const PolyZ& p, int shift) {
  LaurentScalar r(1);
  for (size_t i = 0; i < p.size(); ++i)
    if (p[i] != 0) r.terms_.emplace(static_cast<int>(i) + shift, CycloScalar(1, p[i]));
  return r;
}

CycloScalar LaurentScalar::coeff(int e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? CycloScalar(order_) : it->second;
}

int LaurentScalar::min_exponent() const {
  if (terms_.empty()) throw DomainError("zero has no lowest term");
  return terms_.begin()->first;
}

int LaurentScalar::max_exponent() const {
  if (terms_.empty()) throw DomainError("zero has no highest term");
  return terms_.rbegin()->first;
}

void LaurentScalar::add_term(int e, const CycloScalar& c) {
  if (c.is_zero()) return;
  if (c.order() != order_) {
    int m = std::lcm(order_, c.order());
    if (m != order_) *this = lift_to(m);
  }
  CycloScalar v = c.lift_to(order_);
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, v);
  } else {
    it->second += v;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

LaurentScalar LaurentScalar::shifted(int e) const {
  LaurentScalar r(order_);
  for (const auto& [k, c] : terms_) r.terms_.emplace(k + e, c);
  return r;
}

LaurentScalar LaurentScalar::bar() const {
  LaurentScalar r(order_);
  for (const auto& [k, c] : terms_) r.terms_.emplace(-k, c.conj());
  return r;
}

LaurentScalar LaurentScalar::lift_to(int m) const {
  LaurentScalar r(m);
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, c.lift_to(m));
  return r;
}

CycloScalar LaurentScalar::at_one() const {
  CycloScalar s(order_);
  for (const auto& [k, c] : terms_) s += c;
  return s;
}

bool LaurentScalar::is_integral() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_integer(); });
}

PolyZ LaurentScalar::to_poly(int* shift) const {
  if (!is_integral()) throw DomainError("Laurent polynomial has non-integer coefficients");
  if (terms_.empty()) {
    *shift = 0;
    return {};
  }
  *shift = min_exponent();
  PolyZ p(max_exponent() - *shift + 1);
  for (const auto& [k, c] : terms_) p[k - *shift] = c.integer_part();
  return p;
}

void LaurentScalar::unify(const LaurentScalar& o) {
  if (o.order_ == order_) return;
  int m = std::lcm(order_, o.order_);
  if (m != order_) *this = lift_to(m);
}

LaurentScalar LaurentScalar::operator-() const {
  LaurentScalar r(order_);
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
  return r;
}

LaurentScalar& LaurentScalar::operator+=(const LaurentScalar& o) {
  unify(o);
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

LaurentScalar& LaurentScalar::operator-=(const LaurentScalar& o) { return *this += -o; }

LaurentScalar& LaurentScalar::operator*=(const LaurentScalar& o) {
  unify(o);
  LaurentScalar r(order_);
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : o.terms_) r.add_term(a + b, ca * cb);
  *this = std::move(r);
  return *this;
}

bool operator==(const LaurentScalar& a, const LaurentScalar& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  auto ib = b.terms_.begin();
  for (const auto& [k, c] : a.terms_) {
    if (ib->first != k || !(ib->second == c)) return false;
    ++ib;
  }
  return true;
}

bool operator<(const LaurentScalar& a, const LaurentScalar& b) {
  return std::lexicographical_compare(
      a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(),
      [](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first < y.first;
        return x.second < y.second;
      });
}

LaurentScalar LaurentScalar::divexact(const LaurentScalar& d) const {
  if (d.is_zero()) throw DomainError("division by zero");
  LaurentScalar rem = *this;
  rem.unify(d);
  LaurentScalar dd = d.lift_to(rem.order_);
  LaurentScalar quo(rem.order_);
  int dtop = dd.max_exponent();
  CycloScalar inv_lead;
  try {
    inv_lead = dd.coeff(dtop).inverse();
  } catch (const NotInvertibleError&) {
    throw DomainError("divisor has non-unit leading coefficient");
  }
  int dlow = dd.min_exponent();
  while (!rem.is_zero()) {
    int top = rem.max_exponent();
    if (top - dtop < rem.min_exponent() - dlow) throw DomainError("inexact Laurent division");
    CycloScalar c = rem.coeff(top) * inv_lead;
    LaurentScalar t(c, top - dtop);
    quo += t;
    rem -= t * dd;
  }
  return quo;
}

std::string LaurentScalar::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    std::string cs = c.str();
    bool neg = c.is_integer() && c.integer_part() < 0;
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    if (neg) cs = cs.substr(1);
    bool unit = c.is_integer() && abs(c.integer_part()) == 1;
    if (k == 0) {
      os << cs;
    } else {
      if (!unit) os << cs << "*";
      os << "q";
      if (k != 1) os << "^" << k;
    }
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// SeriesScalar

SeriesScalar::SeriesScalar(int order, int precision) : order_(order), precision_(precision) {}

SeriesScalar SeriesScalar::from_laurent(const LaurentScalar& p, int precision) {
  SeriesScalar s(p.order(), precision);
  for (const auto& [k, c] : p.terms())
    if (k <= precision) s.terms_.emplace(k, c);
  return s;
}

CycloScalar SeriesScalar::coeff(int e) const {
  if (e > precision_) throw PrecisionError("coefficient beyond series precision");
  auto it = terms_.find(e);
  return it == terms_.end() ? CycloScalar(order_) : it->second;
}

LaurentScalar SeriesScalar::truncated() const {
  LaurentScalar r(order_);
  for (const auto& [k, c] : terms_)
    if (k <= precision_) r.add_term(k, c);
  return r;
}

SeriesScalar& SeriesScalar::operator+=(const SeriesScalar& o) {
  LaurentScalar a = truncated() + o.truncated();
  *this = from_laurent(a, std::min(precision_, o.precision_));
  return *this;
}

SeriesScalar& SeriesScalar::operator-=(const SeriesScalar& o) {
  LaurentScalar a = truncated() - o.truncated();
  *this = from_laurent(a, std::min(precision_, o.precision_));
  return *this;
}

SeriesScalar operator*(const SeriesScalar& a, const SeriesScalar& b) {
  LaurentScalar la = a.truncated(), lb = b.truncated();
  if (la.is_zero() || lb.is_zero()) return SeriesScalar(a.order_, std::min(a.precision_, b.precision_));
  // a is known through a.precision; a*b is known through
  // min(a.prec + low(b), b.prec + low(a)).
  int prec = std::min(a.precision_ + lb.min_exponent(), b.precision_ + la.min_exponent());
  return SeriesScalar::from_laurent(la * lb, prec);
}

bool operator==(const SeriesScalar& a, const SeriesScalar& b) {
  int p = std::min(a.precision_, b.precision_);
  return SeriesScalar::from_laurent(a.truncated(), p).truncated() ==
         SeriesScalar::from_laurent(b.truncated(), p).truncated();
}

std::string SeriesScalar::str() const {
  return truncated().str() + " + O(q^" + std::to_string(precision_ + 1) + ")";
}

SeriesScalar series_inverse(const LaurentScalar& p, int precision) {
  if (p.is_zero()) throw NotInvertibleError("zero series is not invertible");
  int v = p.min_exponent();
  CycloScalar inv0;
  try {
    inv0 = p.coeff(v).inverse();
  } catch (const NotInvertibleError&) {
    throw NotInvertibleError("lowest coefficient is not a unit: " + p.coeff(v).str());
  }
  int top = std::max(precision, precision - v);  // so that p*s - 1 vanishes through `precision`
  SeriesScalar s(p.order(), top);
  std::vector<CycloScalar> b;
  for (int k = 0; -v + k <= top; ++k) {
    CycloScalar acc(p.order());
    if (k == 0) acc = CycloScalar(p.order(), 1L);
    for (int i = 1; i <= k; ++i) acc -= p.coeff(v + i) * b[k - i];
    b.push_back(acc * inv0);
    if (!b.back().is_zero()) s.terms_.emplace(-v + k, b.back());
  }
  return s;
}

// ---------------------------------------------------------------------------
// RationalScalar

RationalScalar::RationalScalar(PolyZ num, PolyZ den) : num_(std::move(num)), den_(std::move(den)) {
  polyz::trim(num_);
  polyz::trim(den_);
  if (den_.empty()) throw DomainError("rational function with zero denominator");
  normalize();
}

void RationalScalar::normalize() {
  if (num_.empty()) {
    den_ = {Int(1)};
    return;
  }
  PolyZ g = polyz::gcd(num_, den_);
  // Also strip the rational content: gcd over Z[q] above already contains
  // the integer gcd of contents.
  num_ = polyz::divexact(num_, g);
  den_ = polyz::divexact(den_, g);
  if (den_.back() < 0) {
    num_ = polyz::scale(num_, -1);
    den_ = polyz::scale(den_, -1);
  }
}

RationalScalar RationalScalar::from_laurent(const LaurentScalar& p) {
  int shift;
  PolyZ poly = p.to_poly(&shift);
  if (shift >= 0) {
    PolyZ n(shift, 0);
    n.insert(n.end(), poly.begin(), poly.end());
    return RationalScalar(n, {Int(1)});
  }
  PolyZ d(-shift + 1, 0);
  d.back() = 1;
  return RationalScalar(poly, d);
}

RationalScalar RationalScalar::integer(long v) { return RationalScalar({Int(v)}, {Int(1)}); }

RationalScalar RationalScalar::inverse() const {
  if (is_zero()) throw NotInvertibleError("zero rational function");
  return RationalScalar(den_, num_);
}

namespace {
// f(q) -> q^deg f(1/q) representation of f(q^{-1}).
PolyZ reversed(const PolyZ& p) { return PolyZ(p.rbegin(), p.rend()); }
}  // namespace

RationalScalar RationalScalar::bar() const {
  if (is_zero()) return *this;
  // num(1/q)/den(1/q) = q^{dd-dn} rev(num)/rev(den)
  PolyZ n = reversed(num_), d = reversed(den_);
  int k = polyz::degree(den_) - polyz::degree(num_);
  if (k > 0) n.insert(n.begin(), k, Int(0));
  if (k < 0) d.insert(d.begin(), -k, Int(0));
  return RationalScalar(n, d);
}

bool RationalScalar::is_laurent() const {
  if (den_.empty()) return false;
  for (size_t i = 0; i + 1 < den_.size(); ++i)
    if (den_[i] != 0) return false;
  return den_.back() == 1 || den_.back() == -1;
}

LaurentScalar RationalScalar::to_laurent() const {
  if (!is_laurent()) throw DomainError("rational function is not a Laurent polynomial");
  LaurentScalar r = LaurentScalar::from_poly(num_, -(static_cast<int>(den_.size()) - 1));
  if (den_.back() < 0) r = -r;
  return r;
}

RationalScalar RationalScalar::operator-() const { return RationalScalar(polyz::scale(num_, -1), den_); }

RationalScalar operator+(const RationalScalar& a, const RationalScalar& b) {
  if (a.den_ == b.den_) return RationalScalar(polyz::add(a.num_, b.num_), a.den_);
  return RationalScalar(polyz::add(polyz::mul(a.num_, b.den_), polyz::mul(b.num_, a.den_)),
                        polyz::mul(a.den_, b.den_));
}

RationalScalar operator-(const RationalScalar& a, const RationalScalar& b) { return a + (-b); }

RationalScalar operator*(const RationalScalar& a, const RationalScalar& b) {
  return RationalScalar(polyz::mul(a.num_, b.num_), polyz::mul(a.den_, b.den_));
}

RationalScalar operator/(const RationalScalar& a, const RationalScalar& b) { return a * b.inverse(); }

std::string RationalScalar::str() const {
  if (den_.size() == 1 && den_[0] == 1) return polyz::str(num_);
  return "(" + polyz::str(num_) + ")/(" + polyz::str(den_) + ")";
}

// ---------------------------------------------------------------------------
// q-numbers

LaurentScalar qint(int n, int d) {
  LaurentScalar r(1);
  for (int k = 0; k < n; ++k) r.add_term(d * (n - 1 - 2 * k), CycloScalar(1, 1L));
  return r;
}

LaurentScalar qfactorial(int n, int d) {
  LaurentScalar r = LaurentScalar::constant(1);
  for (int k = 2; k <= n; ++k) r *= qint(k, d);
  return r;
}

LaurentScalar qbinom(int m, int p, int d) {
  if (m < 0 || p < 0 || p > m) throw DomainError("qbinom requires 0 <= p <= m");
  if (d <= 0) throw DomainError("qbinom requires a positive variable exponent");
  // Pascal-type recurrence [m,p] = q^{d(m-p)}[m-1,p-1] + q^{-dp}[m-1,p]
  std::vector<std::vector<LaurentScalar>> t(m + 1);
  for (int a = 0; a <= m; ++a) {
    t[a].resize(a + 1);
    t[a][0] = LaurentScalar::constant(1);
    t[a][a] = LaurentScalar::constant(1);
    for (int b = 1; b < a; ++b)
      t[a][b] = t[a - 1][b - 1].shifted(d * (a - b)) + t[a - 1][b].shifted(-d * b);
  }
  return t[m][p];
}

}  // namespace klrfold
