#include "doctest.h"
#include "klrfold/errors.hpp"
#include "klrfold/falgebra.hpp"

using namespace klrfold;

namespace {

FoldedDatum c2() { return fold(CartanDatum::type_A(3), DiagramAut{{2, 1, 0}}); }
FoldedDatum g2() { return fold(CartanDatum::type_D4(), DiagramAut{{2, 1, 3, 0}}); }

RationalScalar frac(const PolyZ& n, const PolyZ& d) { return RationalScalar(n, d); }
PolyZ poly(std::initializer_list<long> c) {
  PolyZ p;
  for (long v : c) p.push_back(Int(v));
  polyz::trim(p);
  return p;
}

CartanDatum rank_one(int dd) {
  CartanDatum d;
  d.labels = {"j"};
  d.dot = {{dd}};
  return d;
}

}  // namespace

TEST_CASE("form on small words of folded C2") {
  FAlgebra f(c2().folded);
  const int u = 0, v = 1;
  REQUIRE(f.datum().dot[u][u] == 4);
  // <theta_u, theta_u> = 1/(1-q^4)
  CHECK(f.form(f.theta(u), f.theta(u)) == frac(poly({1}), poly({1, 0, 0, 0, -1})));
  // <theta_u theta_v, theta_v theta_u> = q^{-2}/((1-q^4)(1-q^2))
  RationalScalar expect = RationalScalar::from_laurent(LaurentScalar::qpow(-2)) /
                          RationalScalar::from_laurent(f.form_denominator({1, 1}));
  CHECK(f.form(FreeElement::word({u, v}), FreeElement::word({v, u})) == expect);
  CHECK(f.form(f.theta(u), f.theta(v)).is_zero());
  // symmetry
  for (const JWord& a : f.words({1, 2}))
    for (const JWord& b : f.words({1, 2}))
      CHECK(f.form(FreeElement::word(a), FreeElement::word(b)) == f.form(FreeElement::word(b), FreeElement::word(a)));
}

TEST_CASE("Serre kernel in weight 2u+v") {
  FAlgebra f(c2().folded);
  GramData g = f.gram({2, 1});
  CHECK(g.dim_free() == 3);
  CHECK(g.rank == 2);
  REQUIRE(g.kernel.size() == 1);
  CHECK(f.in_radical(g.kernel[0]));
  CHECK(f.gram({1, 2}).kernel.empty());
  CHECK(f.gram({1, 3}).kernel.size() == 1);
  CHECK(f.gram({1, 1}).kernel.empty());
}

TEST_CASE("Gram rank equals graded dimension of f to height 6") {
  std::vector<CartanDatum> data = {CartanDatum::type_A(2), c2().folded, g2().folded};
  for (const CartanDatum& d : data) {
    FAlgebra f(d);
    for (int h = 0; h <= 6; ++h)
      for (const Weight& nu : weights_of_height(d.size(), h)) CHECK(f.dim_f(nu) == graded_dim_f(d, nu));
  }
}

TEST_CASE("coproduct is coassociative and multiplicative") {
  FAlgebra f(c2().folded);
  FreeElement x = FreeElement::word({0, 1, 1}) + RationalScalar::integer(3) * FreeElement::word({1, 0});
  CHECK(f.coproduct_left_iterate(x) == f.coproduct_right_iterate(x));
  FreeElement a = FreeElement::word({0, 1}), b = FreeElement::word({1, 0, 0});
  CHECK(f.coproduct(f.multiply(a, b)) == f.twisted_multiply(f.coproduct(a), f.coproduct(b)));
  // <x, y y'> = <r(x), y (x) y'>
  FreeElement w = FreeElement::word({1, 0, 1, 0});
  TensorElement yy;
  yy.add({0, 1}, {1, 0}, RationalScalar::integer(1));
  CHECK(f.form(w, f.multiply(FreeElement::word({0, 1}), FreeElement::word({1, 0}))) == f.form(f.coproduct(w), yy));
}

TEST_CASE("derivations") {
  FAlgebra f(c2().folded);
  const int u = 0, v = 1;
  CHECK(f.r_derivation(f.theta(u), u, 1, false) == f.one());
  CHECK(f.r_derivation(f.theta(u), u, 1, true) == f.one());
  // r_v(theta_u theta_v) = q^{u.v} theta_u; the right derivation has no twist
  FreeElement x = FreeElement::word({u, v});
  CHECK(f.r_derivation(x, v, 1, false) == RationalScalar::from_laurent(LaurentScalar::qpow(-2)) * f.theta(u));
  CHECK(f.r_derivation(x, v, 1, true) == f.theta(u));
  CHECK(f.r_derivation(x, u, 2, false).is_zero());
}

TEST_CASE("involutions") {
  FAlgebra f(c2().folded);
  FreeElement x = RationalScalar::from_laurent(LaurentScalar::qpow(3)) * FreeElement::word({0, 1, 1});
  CHECK(f.sigma(f.sigma(x)) == x);
  CHECK(f.bar(f.bar(x)) == x);
  CHECK(f.sigma(x) == RationalScalar::from_laurent(LaurentScalar::qpow(3)) * FreeElement::word({1, 1, 0}));
  // sigma is an antiautomorphism of the form: <sigma x, sigma y> = <x, y>
  for (const JWord& a : f.words({1, 2}))
    for (const JWord& b : f.words({1, 2})) {
      FreeElement xa = FreeElement::word(a), yb = FreeElement::word(b);
      CHECK(f.form(f.sigma(xa), f.sigma(yb)) == f.form(xa, yb));
    }
  // radical is preserved
  for (const FreeElement& k : f.gram({2, 1}).kernel) {
    CHECK(f.in_radical(f.sigma(k)));
    CHECK(f.in_radical(f.bar(k)));
  }
}

TEST_CASE("divided powers in rank one") {
  FAlgebra f(rank_one(2));
  FreeElement t2 = f.divided_power(0, 2);
  CHECK(f.multiply(f.theta(0), f.theta(0)) == RationalScalar::from_laurent(qint(2, 1)) * t2);
  CHECK(f.divided_power_monomial({1, 2}, {0, 0}) == RationalScalar::from_laurent(qint(3, 1)) * f.divided_power(0, 3));
}

TEST_CASE("canonical type in rank one") {
  for (int dd : {2, 4, 6}) {
    FAlgebra f(rank_one(dd));
    std::vector<FreeElement> good, bad;
    for (int n = 0; n <= 5; ++n) {
      good.push_back(f.divided_power(0, n));
      bad.push_back(FreeElement::word(JWord(n, 0)));
    }
    AxiomReport r = f.canonical_type_check(good, 5);
    CHECK(r.ok());
    for (const auto& s : r.failures) MESSAGE(s);
    AxiomReport rb = f.canonical_type_check(bad, 5);
    CHECK_FALSE(rb.ok());
    CHECK_FALSE(rb.passed[3]);
    CHECK(rb.passed[5]);
    // highest weight module of dimension lambda+1
    for (int lam = 0; lam <= 3; ++lam) {
      std::vector<std::string> fails;
      auto hw = f.hw_basis({lam}, good, 5, &fails);
      CHECK(static_cast<int>(hw.size()) == lam + 1);
      CHECK(fails.empty());
    }
  }
}

TEST_CASE("canonical basis of A2 to height 3") {
  // theta_i^{(a)} theta_j^{(b)} theta_i^{(c)} with b >= a + c for the (i,j,i) reduced word
  FAlgebra f(CartanDatum::type_A(2));
  std::vector<FreeElement> basis;
  for (int h = 0; h <= 3; ++h)
    for (const Weight& nu : weights_of_height(2, h)) {
      // PBW-style monomials: theta_0^{(a)} theta_1^{(b)} theta_0^{(c)} with b >= a + c,
      // or theta_1^{(a)} theta_0^{(b)} theta_1^{(c)} with b >= a + c.
      std::vector<FreeElement> here;
      for (int a = 0; a <= nu[0]; ++a) {
        int c = nu[0] - a;
        if (nu[1] >= a + c) here.push_back(f.divided_power_monomial({a, nu[1], c}, {0, 1, 0}));
      }
      for (int a = 0; a <= nu[1]; ++a) {
        int c = nu[1] - a;
        if (nu[0] >= a + c) here.push_back(f.divided_power_monomial({a, nu[0], c}, {1, 0, 1}));
      }
      // remove duplicates equal in f
      std::vector<FreeElement> uniq;
      for (const auto& x : here) {
        bool dup = false;
        for (const auto& y : uniq) dup = dup || f.equal_in_f(x, y);
        if (!dup) uniq.push_back(x);
      }
      for (auto& x : uniq) basis.push_back(x);
    }
  AxiomReport r = f.canonical_type_check(basis, 3);
  for (const auto& s : r.failures) MESSAGE(s);
  CHECK(r.ok());
}

TEST_CASE("dual side") {
  FAlgebra f(rank_one(2));
  // functional of L(j^n): theta_j^n -> [n]!
  std::vector<DualElement> dual;
  for (int n = 0; n <= 4; ++n) {
    DualElement phi;
    phi.nu = {n};
    phi.values[JWord(n, 0)] = qfactorial(n, 1);
    dual.push_back(phi);
  }
  CHECK(f.dual_canonical_type_check(dual, 4).ok());
  // r_{j^p} of L(j^m) is [m choose p] L(j^{m-p})
  DualElement r = f.dual_r(dual[4], 0, 1);
  CHECK(r.at(JWord(3, 0)) == qbinom(4, 1, 1) * qfactorial(3, 1));
  CHECK(f.evaluate(dual[3], f.divided_power(0, 3)) == RationalScalar::integer(1));
  // scaling by q breaks bar-stability
  dual[2].values[JWord(2, 0)] = dual[2].values[JWord(2, 0)] * LaurentScalar::qpow(1);
  AxiomReport bad = f.dual_canonical_type_check(dual, 4);
  CHECK_FALSE(bad.passed[5]);
}

TEST_CASE("gram csv") {
  FAlgebra f(c2().folded);
  std::string csv = f.gram_csv(f.gram({1, 1}), {"u", "v"});
  CHECK(csv.rfind("word,uv,vu\n", 0) == 0);
}
