#include <random>

#include "doctest.h"
#include "klrfold/coeff.hpp"
#include "klrfold/errors.hpp"

using namespace klrfold;

namespace {

LaurentScalar q(int e) { return LaurentScalar::qpow(e); }
LaurentScalar c(long v) { return LaurentScalar::constant(v); }

// Naive oracle: multiply as polynomials in zeta, then reduce by repeated
// substitution zeta^n = 1 followed by long division by Phi_n.
std::vector<Int> naive_cyclo_mul(int n, const std::vector<Int>& a, const std::vector<Int>& b) {
  std::vector<Int> raw(n, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) raw[(i + j) % n] += a[i] * b[j];
  PolyZ p(raw.begin(), raw.end());
  PolyZ phi = polyz::cyclotomic(n);
  polyz::trim(p);
  while (polyz::degree(p) >= polyz::degree(phi)) {
    int s = polyz::degree(p) - polyz::degree(phi);
    Int top = p.back();
    for (size_t k = 0; k < phi.size(); ++k) p[s + k] -= top * phi[k];
    polyz::trim(p);
  }
  p.resize(euler_phi(n), 0);
  return p;
}

}  // namespace

TEST_CASE("cyclotomic polynomials") {
  CHECK(polyz::cyclotomic(1) == PolyZ{-1, 1});
  CHECK(polyz::cyclotomic(2) == PolyZ{1, 1});
  CHECK(polyz::cyclotomic(3) == PolyZ{1, 1, 1});
  CHECK(polyz::cyclotomic(4) == PolyZ{1, 0, 1});
  CHECK(polyz::cyclotomic(6) == PolyZ{1, -1, 1});
  CHECK(euler_phi(12) == 4);
}

TEST_CASE("cyclotomic multiplication agrees with naive reduction") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-5, 5);
  for (int n : {2, 3, 4, 5, 6, 8, 12}) {
    int f = euler_phi(n);
    for (int t = 0; t < 30; ++t) {
      CycloScalar a(n), b(n);
      std::vector<Int> va(f), vb(f);
      for (int i = 0; i < f; ++i) {
        va[i] = d(rng);
        vb[i] = d(rng);
        a += CycloScalar(n, va[i]) * CycloScalar::zeta_power(n, i);
        b += CycloScalar(n, vb[i]) * CycloScalar::zeta_power(n, i);
      }
      CHECK((a * b).coeffs() == naive_cyclo_mul(n, va, vb));
    }
  }
}

TEST_CASE("roots of unity") {
  for (int n : {1, 2, 3, 4, 6}) {
    CycloScalar z = CycloScalar::zeta_power(n, 1);
    CycloScalar p(n, 1L);
    CycloScalar sum(n);
    for (int k = 0; k < n; ++k) {
      sum += p;
      p *= z;
    }
    CHECK(p.is_one());
    if (n > 1) CHECK(sum.is_zero());
    CHECK((z * z.conj()).is_one());
    CHECK((z.inverse() * z).is_one());
  }
  // 1 + zeta_3 = -zeta_3^2 is a unit; 2 is not.
  CycloScalar u = CycloScalar(3, 1L) + CycloScalar::zeta_power(3, 1);
  CHECK((u * u.inverse()).is_one());
  CHECK_FALSE(CycloScalar(3, 2L).is_unit());
  // zeta_6 + zeta_6^{-1} = 1
  CycloScalar z6 = CycloScalar::zeta_power(6, 1);
  CHECK((z6 + z6.conj()).is_one());
  // Embedding zeta_2 = zeta_6^3
  CHECK(CycloScalar::zeta_power(2, 1).lift_to(6) == CycloScalar::zeta_power(6, 3));
  CHECK(CycloScalar::zeta_power(3, 1) + CycloScalar::zeta_power(2, 1) ==
        CycloScalar::zeta_power(6, 2) + CycloScalar::zeta_power(6, 3));
}

TEST_CASE("quantum binomials") {
  CHECK(qbinom(2, 1, 1) == q(1) + q(-1));
  CHECK(qbinom(2, 1, 2) == q(2) + q(-2));
  CHECK(qbinom(4, 2, 1) == q(4) + q(2) + c(2) + q(-2) + q(-4));
  CHECK(qbinom(5, 0, 3) == c(1));
  CHECK_THROWS_AS(qbinom(2, 3, 1), DomainError);
  for (int m = 0; m <= 7; ++m)
    for (int p = 0; p <= m; ++p)
      for (int d = 1; d <= 3; ++d) {
        LaurentScalar b = qbinom(m, p, d);
        CHECK(b.bar() == b);
        CHECK(b == qbinom(m, m - p, d));
        // q -> 1 gives the ordinary binomial
        Int expect = 1;
        for (int k = 0; k < p; ++k) expect = expect * (m - k) / (k + 1);
        CHECK(b.at_one().integer_part() == expect);
        // [m,p] [p]! [m-p]! = [m]!
        CHECK(b * qfactorial(p, d) * qfactorial(m - p, d) == qfactorial(m, d));
      }
}

TEST_CASE("bar involution") {
  LaurentScalar x = q(3) + c(2) - q(-1);
  CHECK(x.bar() == q(-3) + c(2) - q(1));
  CHECK(x.bar().bar() == x);
  LaurentScalar z(CycloScalar::zeta_power(3, 1), 2);
  CHECK(z.bar() == LaurentScalar(CycloScalar::zeta_power(3, 2), -2));
  CHECK((x * z).bar() == x.bar() * z.bar());
}

TEST_CASE("series inverse") {
  SeriesScalar a = series_inverse(c(1) - q(4), 12);
  CHECK(a.truncated() == c(1) + q(4) + q(8) + q(12));
  SeriesScalar b = series_inverse(q(2) - q(6), 10);
  CHECK(b.truncated() == q(-2) + q(2) + q(6) + q(10));
  CHECK_THROWS_AS(series_inverse(c(2) - q(1), 5), NotInvertibleError);
  // p * p^{-1} = 1 through the precision
  LaurentScalar p = c(1) - q(1) + q(3) * c(2);
  SeriesScalar s = series_inverse(p, 20);
  SeriesScalar prod = SeriesScalar::from_laurent(p, 20) * s;
  CHECK(prod == SeriesScalar::from_laurent(c(1), 20));
  CHECK_THROWS_AS(s.coeff(s.precision() + 1), PrecisionError);
}

TEST_CASE("Laurent division") {
  LaurentScalar a = (q(2) + q(-2)) * (c(1) - q(3));
  CHECK(a.divexact(c(1) - q(3)) == q(2) + q(-2));
  CHECK_THROWS_AS((c(1) + q(1)).divexact(c(1) + q(2)), DomainError);
}

TEST_CASE("rational functions") {
  RationalScalar one = RationalScalar::integer(1);
  RationalScalar a({Int(1)}, {Int(1), Int(0), Int(0), Int(0), Int(-1)});  // 1/(1-q^4)
  CHECK(a.den().back() > 0);
  RationalScalar b = a * RationalScalar({Int(1), Int(0), Int(0), Int(0), Int(-1)}, {Int(1)});
  CHECK(b == one);
  CHECK((a - a).is_zero());
  // bar(1/(1-q^4)) = -q^4/(1-q^4)
  RationalScalar expect = -RationalScalar({0, 0, 0, 0, Int(1)}, {1, 0, 0, 0, Int(-1)});
  CHECK(a.bar() == expect);
  CHECK(a.bar().bar() == a);
  // (1-q^2)/(1-q^4) = 1/(1+q^2)
  RationalScalar r({1, 0, Int(-1)}, {1, 0, 0, 0, Int(-1)});
  CHECK(r == RationalScalar({Int(1)}, {1, 0, Int(1)}));
  RationalScalar l = RationalScalar::from_laurent(q(-2) + c(3));
  CHECK(l.is_laurent());
  CHECK(l.to_laurent() == q(-2) + c(3));
}
