#include <chrono>

#include "doctest.h"
#include "klrfold/errors.hpp"
#include "klrfold/groth.hpp"

using namespace klrfold;

namespace {

FoldedDatum c2() { return fold(CartanDatum::type_A(3), DiagramAut{{2, 1, 0}}); }
FoldedDatum g2() { return fold(CartanDatum::type_D4(), DiagramAut{{2, 1, 3, 0}}); }

LaurentScalar poly_sum(std::initializer_list<int> exps) {
  LaurentScalar s;
  for (int e : exps) s += LaurentScalar::qpow(e);
  return s;
}

SeriesScalar series(const RationalScalar& x, int prec) {
  return SeriesScalar::from_laurent(LaurentScalar::from_poly(x.num(), 0), prec) *
         series_inverse(LaurentScalar::from_poly(x.den(), 0), prec);
}

}  // namespace

TEST_CASE("projective pairing of one-colour projectives") {
  ModCat mc(c2());
  PairingReport r = pair_proj_proj(mc, {0}, {0}, 12);
  CHECK(r.stable);
  CHECK(r.value == SeriesScalar::from_laurent(poly_sum({0, 4, 8, 12}), 12));
  PairingReport v = pair_proj_proj(mc, {1}, {1}, 10);
  CHECK(v.value == SeriesScalar::from_laurent(poly_sum({0, 2, 4, 6, 8, 10}), 10));
  CHECK(pair_proj_proj(mc, {0}, {1}, 8).value == SeriesScalar::from_laurent(LaurentScalar(), 8));
}

TEST_CASE("pairing at precision 40 is fast") {
  ModCat mc(c2());
  auto t0 = std::chrono::steady_clock::now();
  PairingReport r = pair_proj_proj(mc, {0}, {0}, 40);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  LaurentScalar expect;
  for (int k = 0; k <= 40; k += 4) expect += LaurentScalar::qpow(k);
  CHECK(r.value == SeriesScalar::from_laurent(expect, 40));
  CHECK(r.stable);
  CHECK(secs < 60.0);
}

TEST_CASE("two-letter projective pairings agree with the form on f") {
  ModCat mc(c2());
  FAlgebra f(c2().folded, -1);
  FAlgebra g(c2().folded);
  const int prec = 10;
  for (const JWord& x : f.words({1, 1}))
    for (const JWord& y : f.words({1, 1})) {
      PairingReport r = pair_proj_proj(mc, x, y, prec);
      CHECK(r.stable);
      RationalScalar want = f.form(FreeElement::word(x), FreeElement::word(y));
      CHECK_MESSAGE(r.value == series(want, prec), std::string(r.value.str() + " vs " + series(want, prec).str()));
      CHECK(r.value == pair_proj_proj(mc, y, x, prec).value);
      // diagonal words agree under either twist
      if (x == y) CHECK(r.value == series(g.form(FreeElement::word(x), FreeElement::word(y)), prec));
    }
}

TEST_CASE("projective against simple") {
  ModCat mc(c2());
  CHECK(pair_proj_simple(mc, {0}, mc.one_colour_simple(0)) == LaurentScalar::constant(1));
  CHECK(pair_proj_simple(mc, {1}, mc.one_colour_simple(0)).is_zero());
}

TEST_CASE("q-binomial identity on one colour") {
  ModCat mc(c2());
  for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 0}, {1, 1}, {1, 2}, {2, 2}}) {
    IdentityReport r = qbinomial_identity_check(mc, 0, m, n);
    CHECK_MESSAGE(r.ok, r.detail);
  }
  ModCat mg(g2());
  IdentityReport r = qbinomial_identity_check(mg, 1, 1, 1);
  CHECK_MESSAGE(r.ok, r.detail);
}

TEST_CASE("triangularity and orthonormality to height 3") {
  ModCat mc(c2());
  SimpleTable t = simple_table(mc, 3);
  for (int h = 0; h <= 3; ++h)
    for (const Weight& nu : weights_of_height(2, h)) {
      TriangularityReport r = iota_triangularity(t, nu);
      CHECK(r.ok);
      for (const auto& s : r.failures) MESSAGE(s);
    }
  TriangularityReport uv = iota_triangularity(t, {1, 1});
  CHECK(uv.matrix.size() == 2);
  OrthonormalityReport o = orthonormality(t, 3);
  CHECK(o.ok());
  CHECK(o.checked > 0);
  for (const auto& s : o.failures) MESSAGE(s);
}

TEST_CASE("dual canonical basis and leading coefficients") {
  ModCat mc(c2());
  SimpleTable t = simple_table(mc, 3);
  FAlgebra f(c2().folded, -1);
  AxiomReport r = f.dual_canonical_type_check(t.dual, 3);
  for (const auto& s : r.failures) MESSAGE(s);
  CHECK(r.ok());
  LeadingReport l = leading_coefficient_check(f, t, 3);
  for (const auto& s : l.failures) MESSAGE(s);
  CHECK(l.ok());
  CHECK(l.checked > 0);
}

TEST_CASE("coproduct constants") {
  ModCat mc(c2());
  SimpleTable t = simple_table(mc, 2);
  KClass pu = projective_class(t, {0});
  CoproductReport r = coproduct_constants(mc, t, pu, {1, 0}, {0, 0});
  CHECK(r.ok());
  REQUIRE(r.constants.size() == 1);
  CHECK(r.constants.begin()->second == LaurentScalar::constant(1));
  CoproductReport r0 = coproduct_constants(mc, t, pu, {0, 0}, {1, 0});
  REQUIRE(r0.constants.size() == 1);
  CHECK(r0.constants.begin()->second == LaurentScalar::constant(1));

  // r([P_u][P_v]) against the twisted product r(theta_u) r(theta_v) read in the projective basis.
  FAlgebra f(c2().folded, -1);
  KClass puv = projective_class(t, {0, 1});
  CoproductReport mixed = coproduct_constants(mc, t, puv, {1, 0}, {0, 1});
  CHECK(mixed.ok());
  TensorElement want = f.coproduct(FreeElement::word({0, 1}));
  RationalScalar c;
  for (const auto& [k, v] : want.terms)
    if (k.first == JWord{0} && k.second == JWord{1}) c = v;
  REQUIRE(mixed.constants.size() == 1);
  CHECK_MESSAGE(RationalScalar::from_laurent(mixed.constants.begin()->second) == c, mixed.constants.begin()->second.str());
  CoproductReport swapped = coproduct_constants(mc, t, puv, {0, 1}, {1, 0});
  for (const auto& [k, v] : want.terms)
    if (k.first == JWord{1} && k.second == JWord{0}) c = v;
  REQUIRE(swapped.constants.size() == 1);
  CHECK_MESSAGE(RationalScalar::from_laurent(swapped.constants.begin()->second) == c, swapped.constants.begin()->second.str());
}

TEST_CASE("Mackey identity from one-colour simples") {
  ModCat mc(c2());
  Module lu = mc.one_colour_simple(0), lv = mc.one_colour_simple(1);
  MackeyReport r = mackey_check(mc, {1, 0}, {1, 0}, {1, 0}, {1, 0}, lu, lu);
  CHECK(r.ok());
  CHECK(r.terms == 2);
  CHECK(r.traceless_orbits == 1);
  for (const auto& s : r.failures) MESSAGE(s);
  MackeyReport mixed = mackey_check(mc, {1, 0}, {0, 1}, {0, 1}, {1, 0}, lu, lv);
  CHECK(mixed.ok());
  for (const auto& s : mixed.failures) MESSAGE(s);
  MackeyReport trivial = mackey_check(mc, {1, 0}, {0, 1}, {1, 1}, {0, 0}, lu, lv);
  CHECK(trivial.ok());
  CHECK(trivial.terms == 1);
}

TEST_CASE("duality is functorial up to swap and shift") {
  ModCat mc(c2());
  SimpleTable t = simple_table(mc, 2);
  DualityReport r = duality_functoriality(mc, t, 4);
  for (const auto& s : r.failures) MESSAGE(s);
  CHECK(r.ok());
  CHECK(r.checked > 4);
}
