#include "doctest.h"
#include "klrfold/errors.hpp"
#include "klrfold/modcat.hpp"

using namespace klrfold;

namespace {

FoldedDatum c2() { return fold(CartanDatum::type_A(3), DiagramAut{{2, 1, 0}}); }

LaurentScalar one() { return LaurentScalar::constant(1, 2); }

}  // namespace

TEST_CASE("intertwiners and isomorphism") {
  ModCat mc(c2());
  Module lu = mc.one_colour_simple(0);
  CHECK(mc.hom_dim(lu, lu) == 1);
  CHECK(mc.isomorphic(lu, lu));
  CHECK_FALSE(mc.isomorphic(lu, mc.twist(lu, 1)));
  CHECK(mc.hom_dim(lu, mc.shift(lu, 2)) == 0);
  Module p = mc.one_colour_projective(0, 2);
  CHECK(mc.hom_dim(p, lu) == 1);
}

TEST_CASE("head, socle and simplicity") {
  ModCat mc(c2());
  Module lu = mc.one_colour_simple(0), lv = mc.one_colour_simple(1);
  CHECK(mc.is_simple(lu));
  CHECK(mc.is_simple(lv));
  Module uu = mc.induce(lu, lu);
  CHECK(mc.is_simple(uu));
  CHECK(mc.head(uu).dim() == uu.dim());
  Module p6 = mc.one_colour_projective(0, 6);
  CHECK(p6.dim() == 56);
  CHECK_FALSE(mc.is_simple(p6));
  CHECK(mc.isomorphic(mc.head(p6), lu));
  Module uv = mc.induce(lu, lv);
  CHECK_FALSE(mc.is_simple(uv));
  Module hd = mc.head(uv);
  CHECK(mc.is_simple(hd));
  CHECK(mc.isomorphic(mc.socle(mc.dualize(uv)), mc.dualize(hd)));
  CHECK(mc.check_relations(hd).ok());
  CHECK(mc.check_cocycle(hd).ok());
}

TEST_CASE("equivariant structures") {
  ModCat mc(c2());
  Module lu = mc.one_colour_simple(0);
  std::vector<Module> st = mc.equivariant_structures(lu);
  REQUIRE(st.size() == 2);
  int plain = 0, twisted = 0;
  for (const Module& m : st) {
    CHECK(mc.check_cocycle(m).ok());
    plain += mc.isomorphic(m, lu);
    twisted += mc.isomorphic(m, mc.twist(lu, 1));
  }
  CHECK(plain == 1);
  CHECK(twisted == 1);
  CHECK_FALSE(mc.traceless_decompose(lu).traceless);
}

TEST_CASE("twisted Hom traces") {
  ModCat mc(c2());
  Module lu = mc.one_colour_simple(0);
  CHECK(mc.graded_hom_trace(lu, lu) == one());
  CHECK(mc.graded_hom_trace(mc.one_colour_projective(0, 6), lu) == one());
  CHECK(mc.graded_hom_trace(lu, mc.twist(lu, 1)) == LaurentScalar::constant(-1, 2));
  Module lv = mc.one_colour_simple(1);
  CHECK(mc.graded_hom_trace(lu, mc.shift(lu, 2)) == LaurentScalar::qpow(2, 2));
  CHECK(mc.graded_hom_trace(lv, lu).is_zero());
}

TEST_CASE("crystal operators on small modules") {
  ModCat mc(c2());
  Module lu = mc.one_colour_simple(0), lv = mc.one_colour_simple(1);
  Module fu = mc.f_op(mc.unit(), 0);
  CHECK(mc.isomorphic(fu, lu));
  Module fuu = mc.f_op(lu, 0);
  Module luu = mc.shift(mc.induce(lu, lu), 2);
  CHECK(mc.isomorphic(fuu, luu));
  CHECK(mc.isomorphic(mc.e_op(luu, 0), lu));
  CHECK(mc.isomorphic(mc.e_op(lu, 0), mc.unit()));
  CHECK(mc.e_op(lv, 0).is_zero());
  Module fuv = mc.f_op(lv, 0);
  CHECK(mc.is_simple(fuv));
  CHECK(mc.isomorphic(mc.e_op(fuv, 0), lv));
  CHECK(mc.isomorphic(mc.e_op(fuv, 0, false), lv));
  Module fs = mc.f_op(lu, 1, true);
  CHECK(mc.isomorphic(mc.e_op(fs, 1, true), lu));
}

TEST_CASE("traceless subquotient") {
  ModCat mc(c2());
  Module uv = mc.induce(mc.one_colour_simple(0), mc.one_colour_simple(1));
  auto seeds_in = [](const Module& m, std::initializer_list<std::string> seqs) {
    std::vector<SVec> out;
    for (const auto& s : seqs)
      for (const ModBlock& b : m.blocks)
        if (b.seq == s)
          for (int c = 0; c < b.dim; ++c) out.push_back({{static_cast<std::uint32_t>(b.off + c), 1}});
    return out;
  };
  const std::string s012{0, 1, 2}, s210{2, 1, 0}, s102{1, 0, 2}, s120{1, 2, 0};
  Module sub = mc.generated_submodule(uv, seeds_in(uv, {s012, s210}));
  Module mid = mc.quotient(sub, seeds_in(sub, {s102, s120}));
  REQUIRE(mid.dim() == 2);
  CHECK(mc.check_cocycle(mid).ok());
  CHECK_FALSE(mc.is_simple(mid));
  auto w = mc.traceless_decompose(mid);
  CHECK(w.traceless);
  CHECK(w.period == 2);
  CHECK(w.summand.dim() == 1);
  std::vector<Module> st = mc.equivariant_structures(w.summand);
  REQUIRE(st.size() == 1);
  CHECK(st[0].dim() == 2);
  CHECK(mc.check_relations(st[0]).ok());
  CHECK(mc.check_cocycle(st[0]).ok());
  CHECK(mc.isomorphic(st[0], mid));
  CHECK(mc.word_pairing(mid, {1, 0}).is_zero());
  CHECK(mc.word_pairing(mid, {0, 1}).is_zero());
}
