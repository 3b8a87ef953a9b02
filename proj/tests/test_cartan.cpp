#include <random>

#include "doctest.h"
#include "klrfold/cartan.hpp"
#include "klrfold/errors.hpp"

using namespace klrfold;

namespace {
long multinomial(const Weight& nu) {
  long r = 1;
  int n = 0;
  for (int k : nu)
    for (int i = 1; i <= k; ++i) r = r * (++n) / i;
  return r;
}
}  // namespace

TEST_CASE("validation") {
  CartanDatum a3 = CartanDatum::type_A(3);
  CHECK(validate(a3, DiagramAut{{2, 1, 0}}).ok());
  CHECK_FALSE(validate(CartanDatum::type_A(2), DiagramAut{{1, 0}}).ok());
  CHECK(validate(a3, DiagramAut::identity(3)).ok());
  CartanDatum bad = a3;
  bad.dot[0][1] = 1;
  CHECK_FALSE(validate(bad).ok());
  CHECK_THROWS_AS(fold(CartanDatum::type_A(2), DiagramAut{{1, 0}}), ValidationError);
}

TEST_CASE("folding A3 gives C2") {
  FoldedDatum f = fold(CartanDatum::type_A(3), DiagramAut{{2, 1, 0}});
  REQUIRE(f.orbits.size() == 2);
  CHECK(f.orbits[0] == std::vector<int>{0, 2});
  CHECK(f.folded.dot == std::vector<std::vector<int>>{{4, -2}, {-2, 2}});
  CHECK(f.folded.c(0, 1) == -1);
  CHECK(f.folded.c(1, 0) == -2);
  CHECK(f.n() == 2);
  CHECK(f.lift({2, 1}) == Weight{2, 1, 2});
  CHECK(f.descend({1, 3, 1}) == Weight{1, 3});
  CHECK_THROWS_AS(f.descend({1, 0, 0}), DomainError);
}

TEST_CASE("folding D4 gives G2") {
  FoldedDatum f = fold(CartanDatum::type_D4(), DiagramAut{{2, 1, 3, 0}});
  REQUIRE(f.orbits.size() == 2);
  CHECK(f.n() == 3);
  CHECK(f.folded.d(0) == 3);
  CHECK(f.folded.d(1) == 1);
  CHECK(f.folded.c(0, 1) == -1);
  CHECK(f.folded.c(1, 0) == -3);
  CHECK(positive_roots(f.folded, 100).size() == 6);
}

TEST_CASE("identity fold is the original datum") {
  CartanDatum a2 = CartanDatum::type_A(2);
  FoldedDatum f = fold(a2, DiagramAut::identity(2));
  CHECK(f.folded.dot == a2.dot);
  CHECK(f.folded.labels == a2.labels);
}

TEST_CASE("json loading") {
  LoadedDatum a3 = load_datum_file(KLRFOLD_DATA_DIR "/a3.json");
  CHECK(a3.aut.perm == std::vector<int>{2, 1, 0});
  LoadedDatum d4 = load_datum_file(KLRFOLD_DATA_DIR "/d4.json");
  CHECK(d4.aut.order() == 3);
  CHECK(fold(d4.datum, d4.aut).folded.d(0) == 3);
  LoadedDatum a2 = load_datum_file(KLRFOLD_DATA_DIR "/a2-trivial.json");
  CHECK(a2.aut.order() == 1);
  CHECK_THROWS_AS(load_datum_json("{\"I\": [1,2"), ValidationError);
}

TEST_CASE("sequences") {
  CHECK(seq_enumerate({1, 0, 1}) == std::vector<Seq>{{0, 2}, {2, 0}});
  CHECK(seq_enumerate({2, 0, 0}) == std::vector<Seq>{{0, 0}});
  CHECK(seq_enumerate({1, 1, 1}).size() == 6);
  for (const Weight& nu : weights_of_height(3, 5))
    CHECK(static_cast<long>(seq_enumerate(nu).size()) == multinomial(nu));
  CHECK_THROWS_AS(seq_enumerate({20, 0, 0}), SizeError);
}

TEST_CASE("positive roots and Kostant partitions") {
  CartanDatum a2 = CartanDatum::type_A(2);
  CHECK(positive_roots(a2, 10).size() == 3);
  FoldedDatum c2 = fold(CartanDatum::type_A(3), DiagramAut{{2, 1, 0}});
  auto r = positive_roots(c2.folded, 10);
  CHECK(r.size() == 4);
  CHECK(graded_dim_f(a2, {1, 1}) == 2);
  CHECK(graded_dim_f(c2.folded, {2, 1}) == 2);
  CHECK(graded_dim_f(c2.folded, {0, 0}) == 1);
  CHECK(graded_dim_f(c2.folded, {1, 0}) == 1);
  CHECK(graded_dim_f(c2.folded, {0, 1}) == 1);
  CHECK_THROWS_AS(positive_roots(CartanDatum::simply_laced({"a", "b", "c"}, {{0, 1}, {1, 2}, {2, 0}}), 4),
                  UnsupportedTypeError);
  // Unfolded A3 has 6 positive roots; a Kostant count oracle by brute force.
  CartanDatum a3 = CartanDatum::type_A(3);
  CHECK(positive_roots(a3, 10).size() == 6);
  CHECK(graded_dim_f(a3, {1, 1, 1}) == 4);
}

TEST_CASE("fold output satisfies the axioms on random admissible inputs") {
  std::mt19937 rng(3);
  for (int t = 0; t < 50; ++t) {
    // Random simply-laced graph on 4 vertices plus the swap (0 1)(2 3) when admissible.
    std::vector<std::pair<int, int>> edges;
    std::uniform_int_distribution<int> coin(0, 1);
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (coin(rng)) edges.emplace_back(i, j);
    CartanDatum d = CartanDatum::simply_laced({"a", "b", "c", "d"}, edges);
    DiagramAut a{{1, 0, 3, 2}};
    if (!validate(d, a).ok()) continue;
    FoldedDatum f = fold(d, a);
    CHECK(validate(f.folded).ok());
  }
}
