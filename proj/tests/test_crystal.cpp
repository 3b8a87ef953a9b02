#include <fstream>

#include "doctest.h"
#include "klrfold/crystal.hpp"
#include "klrfold/errors.hpp"
#include "klrfold/modcat.hpp"

using namespace klrfold;

namespace {

FoldedDatum c2() { return fold(CartanDatum::type_A(3), DiagramAut{{2, 1, 0}}); }

BtElement op(BtOp o, BtElement x, int t) {
  BtElement y;
  REQUIRE(bt_apply(o, x, t, y));
  return y;
}

}  // namespace

TEST_CASE("B_t operators") {
  CHECK(op(BtOp::f, {0, 0, 2}, 2) == BtElement{1, 0, 1});
  CHECK(op(BtOp::f_star, {1, 0, 0}, 1) == BtElement{2, 1, 0});
  CHECK(bt_eps({2, 1, 0}) == 2);
  CHECK(bt_eps_star({2, 1, 0}) == 1);
  CHECK(bt_valid({1, 1, 0}, 0));
  CHECK_FALSE(bt_valid({1, 0, 0}, 0));
  CHECK_FALSE(bt_valid({0, 0, 0}, 2));
  BtElement y;
  CHECK_FALSE(bt_apply(BtOp::e, {0, 3, 0}, 3, y));
  for (int t = 0; t <= 4; ++t) {
    CrystalGraph g = bt_graph(t, 5);
    CrystalReport r = crystal_axioms_check(g);
    CHECK(r.ok());
    for (const auto& f : r.failures) MESSAGE(f);
    CHECK(local_sl2_check(g, 0, 0).ok());
    for (int b = 0; b < g.size(); ++b) {
      if (!g.f_defined(b)) continue;
      int fb = g.f[b][0];
      CHECK(g.eps[fb][0] == g.eps[b][0] + 1);
      CHECK(g.e[fb][0] == b);
    }
  }
  CrystalReport c = criterion_check(bt_graph(0, 6));
  CHECK(c.ok());
  for (const auto& f : c.failures) MESSAGE(f);
}

TEST_CASE("negative controls") {
  CrystalGraph g = bt_graph(0, 3);
  g.e[2][0] = 0;  // break one inverse pair
  CHECK_FALSE(crystal_axioms_check(g).ok());
  CrystalGraph h = bt_graph(2, 3);
  h.base_pairing = {0};
  CHECK_FALSE(criterion_check(h).ok());
}

TEST_CASE("module crystal of folded C2 to height 2") {
  FoldedDatum fd = c2();
  ModCat mc(fd);
  ModuleCrystal m = generate_crystal_simples(mc, 2);
  CHECK(m.complete());
  CHECK(m.v.size() == 1 + 2 + 4);
  for (const auto& x : m.v) CHECK(m.at_weight(x.nu).size() == static_cast<size_t>(graded_dim_f(fd.folded, x.nu)));
  CHECK(m.iso_checks > 0);
  for (const auto& x : m.v) {
    if (x.mod.dim() == 0) continue;
    CHECK(mc.is_simple(x.mod));
    CHECK(mc.isomorphic(mc.dualize(x.mod), x.mod));
    CHECK(mc.isomorphic(mc.dualize(mc.dualize(x.mod)), x.mod));
  }
  CrystalGraph g = crystal_from_modules(m, fd);
  // e~ from the socle formula agrees with the inverse f~ edges
  for (int b = 1; b < g.size(); ++b)
    for (int j = 0; j < g.rank; ++j)
      for (int star = 0; star < 2; ++star) {
        int target = (star ? g.e_star : g.e)[b][j];
        Module em = mc.e_op(m.v[b].mod, j, star != 0);
        if (target == CrystalGraph::kNone) {
          CHECK(em.is_zero());
        } else {
          CHECK(mc.isomorphic(em, m.v[target].mod));
        }
      }
  std::vector<int> seq = round_robin(2, 8);
  CHECK(iota_string(g, 0, seq).empty());
  CHECK(iota_string(g, g.f[0][0], seq) == std::vector<int>{1});
  // f~_v f~_u [1] = hd(L(v) o L(u)) has eps_u = 0
  CHECK(iota_string(g, g.f[g.f[0][0]][1], seq) == std::vector<int>{0, 1, 1});
  CHECK(iota_injective(g, seq));
}

TEST_CASE("module crystal of folded C2 to height 4") {
  FoldedDatum fd = c2();
  ModCat mc(fd);
  ModuleCrystal m = generate_crystal_simples(mc, 4);
  REQUIRE(m.complete());
  std::map<Weight, int> counts = m.counts();
  for (int h = 0; h <= 4; ++h)
    for (const Weight& nu : weights_of_height(2, h)) CHECK(counts[nu] == graded_dim_f(fd.folded, nu));
  for (const auto& x : m.v) {
    Character dual;
    for (auto [k, d] : x.ch) dual[{k.first, -k.second}] += d;
    CHECK(dual == x.ch);
  }
  CrystalGraph g = crystal_from_modules(m, fd);
  for (auto* check : {&crystal_axioms_check, &criterion_check, &efcommute_check, &estar_power_commute_check, &local_sl2_check_all}) {
    CrystalReport r = (*check)(g);
    CHECK(r.ok());
    CHECK(r.checked > 0);
    for (const auto& f : r.failures) MESSAGE(f);
  }
  std::vector<int> seq = round_robin(2, 16);
  CHECK(iota_injective(g, seq));
  std::string dot = to_dot(g, seq, {"u", "v"});
  CHECK(dot.find("style=dashed") != std::string::npos);
}
