#include "doctest.h"
#include "klrfold/errors.hpp"
#include "klrfold/modcat.hpp"

using namespace klrfold;

namespace {

FoldedDatum c2() { return fold(CartanDatum::type_A(3), DiagramAut{{2, 1, 0}}); }
FoldedDatum g2() { return fold(CartanDatum::type_D4(), DiagramAut{{2, 1, 3, 0}}); }

void check_module(ModCat& mc, const Module& m) {
  CheckReport r = mc.check_relations(m);
  CHECK(r.ok());
  for (const auto& f : r.failures) MESSAGE(f);
  CheckReport c = mc.check_cocycle(m);
  CHECK(c.ok());
  for (const auto& f : c.failures) MESSAGE(f);
}

Character shifted(const Character& ch, int d) {
  Character out;
  for (auto [k, v] : ch) out[{k.first, k.second + d}] += v;
  return out;
}

}  // namespace

TEST_CASE("one-colour simples") {
  ModCat mc(c2());
  Module lu = mc.one_colour_simple(0);
  CHECK(lu.dim() == 2);
  CHECK(lu.blocks[0].seq == std::string{0, 2});
  CHECK(lu.blocks[1].seq == std::string{2, 0});
  CHECK(column(lu.sigma, 0) == SVec{{1, 1}});
  check_module(mc, lu);
  Module lv = mc.one_colour_simple(1);
  CHECK(lv.dim() == 1);
  check_module(mc, lv);
  ModCat triv(fold(CartanDatum::type_A(2), DiagramAut::identity(2)));
  Module l1 = triv.one_colour_simple(0);
  CHECK(l1.dim() == 1);
  CHECK(column(l1.sigma, 0) == SVec{{0, 1}});
}

TEST_CASE("one-colour projectives") {
  ModCat mc(c2());
  Module p0 = mc.one_colour_projective(0, 0);
  CHECK(mc.character(p0) == mc.character(mc.one_colour_simple(0)));
  Module p4 = mc.one_colour_projective(0, 4);
  CHECK(p4.dim() == 2 * 15);
  check_module(mc, p4);
  ModCat mg(g2());
  Module pg = mg.one_colour_projective(0, 2);
  CHECK(pg.dim() == 6 * 10);
  check_module(mg, pg);
}

TEST_CASE("induction") {
  ModCat mc(c2());
  Module lu = mc.one_colour_simple(0), lv = mc.one_colour_simple(1);
  Module uv = mc.induce(lu, lv);
  CHECK(uv.dim() == 6);
  check_module(mc, uv);
  Module uu = mc.induce(lu, lu);
  CHECK(uu.dim() == 24);
  check_module(mc, uu);
  Module uvu = mc.induce(uv, lu);
  CHECK(uvu.dim() == 6 * 10 * 2);
  check_module(mc, uvu);
  CHECK(mc.character(mc.induce(mc.unit(), lu)) == mc.character(lu));
  Module vv = mc.induce(lv, lv);
  check_module(mc, vv);
  Module pp = mc.induce(mc.one_colour_projective(0, 2), lv);
  check_module(mc, pp);
}

TEST_CASE("restriction and duality") {
  ModCat mc(c2());
  Module lu = mc.one_colour_simple(0);
  Module uu = mc.induce(lu, lu);
  Module lu2 = mc.shift(uu, 2);  // L(u^2) = q_u L(u) o L(u)
  Module res = mc.restrict(lu2, {1, 0, 1});
  // Underlying multiplicity q^-2 + 2 + q^2; the middle pair is swapped by
  // sigma, so the equivariant class is [2]_u [L(u) (x) L(u)].
  Character luu = mc.character(mc.tensor(lu, lu));
  Character expect = shifted(luu, 2);
  for (auto [k, v] : shifted(luu, -2)) expect[k] += v;
  for (auto [k, v] : luu) expect[k] += 2 * v;
  CHECK(mc.character(res) == expect);
  CHECK(mc.word_pairing(res, {0, 0}) == LaurentScalar::qpow(2, 2) + LaurentScalar::qpow(-2, 2));
  check_module(mc, res);
  CHECK(mc.restrict(lu, {0, 0, 0}).dim() == 2);
  CHECK(mc.restrict(lu, {0, 1, 0}).dim() == 0);
  Module d = mc.dualize(uu);
  check_module(mc, d);
  Module dd = mc.dualize(d);
  CHECK(dd.blocks.size() == uu.blocks.size());
  CHECK(dd.sigma.val == uu.sigma.val);
  CHECK(dd.tau[1].val == uu.tau[1].val);
  CHECK(mc.character(mc.dualize(lu)) == mc.character(lu));
}

TEST_CASE("epsilon and twisted pairings") {
  ModCat mc(c2());
  Module lu = mc.one_colour_simple(0), lv = mc.one_colour_simple(1);
  Module uu = mc.induce(lu, lu);
  CHECK(mc.epsilon(lu, 0) == 1);
  CHECK(mc.epsilon(lv, 0) == 0);
  CHECK(mc.epsilon(uu, 0) == 2);
  Module uv = mc.induce(lu, lv);
  CHECK(mc.epsilon(uv, 0) == 1);
  CHECK(mc.epsilon(uv, 1) == 1);
  CHECK(mc.epsilon(uv, 1, true) == 1);
  CHECK(mc.word_pairing(lu, {0}) == LaurentScalar::constant(1, 2));
  CHECK(mc.word_pairing(mc.twist(lu, 1), {0}) == LaurentScalar::constant(-1, 2));
  // <P_u o P_u, L(u^2)> = [2]_u
  LaurentScalar w = mc.word_pairing(mc.shift(uu, 2), {0, 0});
  CHECK(w == LaurentScalar::qpow(2, 2) + LaurentScalar::qpow(-2, 2));
}
