#pragma once

// Exact scalar arithmetic: cyclotomic integers Z[zeta_n], Laurent
// polynomials in q over Z[zeta_n], truncated Laurent series, and rational
// functions in q with integer coefficients.

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

namespace klrfold {

using Int = mpz_class;

/// Dense integer polynomial in q, lowest degree first. Trailing zeros are
/// always stripped, so the zero polynomial is the empty vector.
using PolyZ = std::vector<Int>;

namespace polyz {
void trim(PolyZ& p);
PolyZ add(const PolyZ& a, const PolyZ& b);
PolyZ sub(const PolyZ& a, const PolyZ& b);
PolyZ mul(const PolyZ& a, const PolyZ& b);
PolyZ scale(const PolyZ& a, const Int& c);
int degree(const PolyZ& p);  // -1 for zero
Int content(const PolyZ& p);
PolyZ primitive_part(const PolyZ& p);
/// Exact division; throws DomainError if b does not divide a over Z.
PolyZ divexact(const PolyZ& a, const PolyZ& b);
PolyZ gcd(const PolyZ& a, const PolyZ& b);
/// n-th cyclotomic polynomial.
PolyZ cyclotomic(int n);
std::string str(const PolyZ& p, const char* var = "q");
}  // namespace polyz

int euler_phi(int n);

/// Element of Z[zeta_n] stored in the power basis 1, zeta, ..., zeta^{phi(n)-1}
/// and kept reduced modulo the n-th cyclotomic polynomial.
class CycloScalar {
 public:
  explicit CycloScalar(int order = 1);
  CycloScalar(int order, long value);
  CycloScalar(int order, const Int& value);

  static CycloScalar zeta_power(int order, long k);

  int order() const { return order_; }
  const std::vector<Int>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_one() const;
  /// True when the value lies in Z (all non-constant coordinates vanish).
  bool is_integer() const;
  Int integer_part() const { return coeffs_[0]; }

  /// zeta -> zeta^{-1}.
  CycloScalar conj() const;
  /// Embed into Z[zeta_m] for m a multiple of order().
  CycloScalar lift_to(int m) const;
  /// Multiplicative inverse when it exists in Z[zeta_n].
  CycloScalar inverse() const;
  bool is_unit() const;

  CycloScalar operator-() const;
  CycloScalar& operator+=(const CycloScalar& o);
  CycloScalar& operator-=(const CycloScalar& o);
  CycloScalar& operator*=(const CycloScalar& o);
  friend CycloScalar operator+(CycloScalar a, const CycloScalar& b) { return a += b; }
  friend CycloScalar operator-(CycloScalar a, const CycloScalar& b) { return a -= b; }
  friend CycloScalar operator*(CycloScalar a, const CycloScalar& b) { return a *= b; }
  friend bool operator==(const CycloScalar& a, const CycloScalar& b);
  friend bool operator!=(const CycloScalar& a, const CycloScalar& b) { return !(a == b); }
  friend bool operator<(const CycloScalar& a, const CycloScalar& b);

  std::string str() const;

 private:
  void reduce_from(std::vector<Int> raw);
  void unify(const CycloScalar& o);

  int order_;
  std::vector<Int> coeffs_;
};

/// Finite Laurent polynomial in q with Z[zeta_n] coefficients.
class LaurentScalar {
 public:
  explicit LaurentScalar(int order = 1) : order_(order) {}
  LaurentScalar(const CycloScalar& c, int exponent = 0);

  static LaurentScalar constant(long v, int order = 1);
  static LaurentScalar qpow(int e, int order = 1);
  static LaurentScalar from_poly(const PolyZ& p, int shift = 0);

  int order() const { return order_; }
  const std::map<int, CycloScalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  CycloScalar coeff(int e) const;
  int min_exponent() const;
  int max_exponent() const;

  void add_term(int e, const CycloScalar& c);
  LaurentScalar shifted(int e) const;

  /// q -> q^{-1} and zeta -> zeta^{-1}.
  LaurentScalar bar() const;
  LaurentScalar lift_to(int m) const;
  /// Value at q = 1.
  CycloScalar at_one() const;
  /// True when every coefficient is an ordinary integer.
  bool is_integral() const;
  /// Integer polynomial q^{min}*P(q) decomposition; requires is_integral().
  PolyZ to_poly(int* shift) const;

  LaurentScalar operator-() const;
  LaurentScalar& operator+=(const LaurentScalar& o);
  LaurentScalar& operator-=(const LaurentScalar& o);
  LaurentScalar& operator*=(const LaurentScalar& o);
  friend LaurentScalar operator+(LaurentScalar a, const LaurentScalar& b) { return a += b; }
  friend LaurentScalar operator-(LaurentScalar a, const LaurentScalar& b) { return a -= b; }
  friend LaurentScalar operator*(LaurentScalar a, const LaurentScalar& b) { return a *= b; }
  friend bool operator==(const LaurentScalar& a, const LaurentScalar& b);
  friend bool operator!=(const LaurentScalar& a, const LaurentScalar& b) { return !(a == b); }
  friend bool operator<(const LaurentScalar& a, const LaurentScalar& b);

  /// Exact division; throws DomainError when the quotient is not Laurent.
  LaurentScalar divexact(const LaurentScalar& d) const;

  std::string str() const;

 private:
  void unify(const LaurentScalar& o);
  int order_;
  std::map<int, CycloScalar> terms_;
};

inline constexpr int kDefaultPrecision = 40;

/// Truncated Laurent series: coefficients of q^{low}, ..., q^{precision}.
/// Arithmetic is valid only through degree precision.
class SeriesScalar {
 public:
  SeriesScalar() : SeriesScalar(1, kDefaultPrecision) {}
  SeriesScalar(int order, int precision);
  static SeriesScalar from_laurent(const LaurentScalar& p, int precision);

  int order() const { return order_; }
  int precision() const { return precision_; }
  CycloScalar coeff(int e) const;
  /// Nonzero terms of degree <= precision.
  LaurentScalar truncated() const;
  bool is_zero() const { return truncated().is_zero(); }

  SeriesScalar& operator+=(const SeriesScalar& o);
  SeriesScalar& operator-=(const SeriesScalar& o);
  friend SeriesScalar operator+(SeriesScalar a, const SeriesScalar& b) { return a += b; }
  friend SeriesScalar operator-(SeriesScalar a, const SeriesScalar& b) { return a -= b; }
  friend SeriesScalar operator*(const SeriesScalar& a, const SeriesScalar& b);
  /// Equality on the common precision.
  friend bool operator==(const SeriesScalar& a, const SeriesScalar& b);

  std::string str() const;

 private:
  friend SeriesScalar series_inverse(const LaurentScalar& p, int precision);
  int order_;
  int precision_;
  std::map<int, CycloScalar> terms_;
};

/// Reduced fraction num/den of integer polynomials in q. The denominator has
/// positive leading coefficient and gcd(num, den) = 1.
class RationalScalar {
 public:
  RationalScalar() : num_(), den_{Int(1)} {}
  RationalScalar(PolyZ num, PolyZ den);
  static RationalScalar from_laurent(const LaurentScalar& p);
  static RationalScalar integer(long v);

  const PolyZ& num() const { return num_; }
  const PolyZ& den() const { return den_; }
  bool is_zero() const { return num_.empty(); }
  RationalScalar inverse() const;
  RationalScalar bar() const;
  /// Laurent expansion when the denominator is a monomial.
  bool is_laurent() const;
  LaurentScalar to_laurent() const;

  RationalScalar operator-() const;
  friend RationalScalar operator+(const RationalScalar& a, const RationalScalar& b);
  friend RationalScalar operator-(const RationalScalar& a, const RationalScalar& b);
  friend RationalScalar operator*(const RationalScalar& a, const RationalScalar& b);
  friend RationalScalar operator/(const RationalScalar& a, const RationalScalar& b);
  friend bool operator==(const RationalScalar& a, const RationalScalar& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalScalar& a, const RationalScalar& b) { return !(a == b); }

  std::string str() const;

 private:
  void normalize();
  PolyZ num_, den_;
};

/// Balanced Gaussian binomial [m, p] in the variable q^d.
LaurentScalar qbinom(int m, int p, int d);
/// Balanced quantum integer [n] in q^d.
LaurentScalar qint(int n, int d);
/// Balanced quantum factorial [n]! in q^d.
LaurentScalar qfactorial(int n, int d);

inline LaurentScalar bar(const LaurentScalar& x) { return x.bar(); }

/// Inverse of p as a series valid through degree `precision`.
SeriesScalar series_inverse(const LaurentScalar& p, int precision = kDefaultPrecision);

}  // namespace klrfold
