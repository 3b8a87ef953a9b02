#include "doctest.h"
#include "klrfold/errors.hpp"
#include "klrfold/klr.hpp"

using namespace klrfold;

namespace {

KLRAlgebra a3_algebra() { return KLRAlgebra(CartanDatum::type_A(3), DiagramAut{{2, 1, 0}}); }
CycloScalar cs(long v) { return CycloScalar(1, v); }

}  // namespace

TEST_CASE("default Q family") {
  CartanDatum a3 = CartanDatum::type_A(3);
  QFamily q = default_q_family(a3);
  CHECK(q(0, 2) == Poly2{{{0, 0}, cs(1)}});
  CHECK(q(0, 1) == Poly2{{{1, 0}, cs(1)}, {{0, 1}, cs(1)}});
  CHECK(q(1, 1).empty());
  CHECK(validate_q_family(a3, DiagramAut{{2, 1, 0}}, q).ok());
  QFamily bad = q;
  bad.q[0][1].erase({1, 0});
  CHECK_FALSE(validate_q_family(a3, DiagramAut{{2, 1, 0}}, bad).ok());
  QFamily noninv = q;
  noninv.q[0][1][{1, 0}] = cs(2);
  noninv.q[1][0][{0, 1}] = cs(2);
  CHECK(validate_q_family(a3, DiagramAut::identity(3), noninv).ok());
  CHECK_FALSE(validate_q_family(a3, DiagramAut{{2, 1, 0}}, noninv).ok());
}

TEST_CASE("permutation helpers") {
  Perm z = perm::from_word(std::string{1, 0, 1}, 3);
  CHECK(perm::length(z) == 3);
  CHECK(perm::canonical_word(z) == std::string{0, 1, 0});
  for (const Perm& w : perm::all(4)) {
    Word c = perm::canonical_word(w);
    CHECK(static_cast<int>(c.size()) == perm::length(w));
    CHECK(perm::from_word(c, 4) == w);
    // every suffix of a canonical word is canonical
    for (size_t r = 1; r < c.size(); ++r) CHECK(perm::canonical_word(perm::from_word(c.substr(r), 4)) == c.substr(r));
  }
}

TEST_CASE("basic products") {
  KLRAlgebra R = a3_algebra();
  // tau1 tau1 e_(1,3) = e_(1,3)
  CHECK(R.multiply(R.tau(0, {2, 0}), R.tau(0, {0, 2})) == R.idem({0, 2}));
  // tau1 y1 e_(i,i) = y2 tau1 e_(i,i) - e_(i,i)
  KLRElement lhs = R.multiply(R.tau(0, {0, 0}), R.y(0, {0, 0}));
  KLRElement rhs = R.multiply(R.y(1, {0, 0}), R.tau(0, {0, 0})) - R.idem({0, 0});
  CHECK(lhs == rhs);
  CHECK(R.multiply(R.idem({0, 1}), R.idem({1, 0})).is_zero());
  CHECK_THROWS_AS(R.multiply(R.idem({0}), R.idem({0, 1})), DomainError);
}

TEST_CASE("degrees") {
  KLRAlgebra R = a3_algebra();
  CHECK(R.degree(R.tau(0, {0, 1})).degree == 1);
  CHECK(R.degree(R.y(0, {0})).degree == 2);
  CHECK(R.degree(R.idem({0, 1, 2})).degree == 0);
  CHECK(R.degree(R.tau(0, {0, 0})).degree == -2);
  KLRElement mixed = R.idem({0, 0}) + R.tau(0, {0, 0});
  CHECK_FALSE(R.degree(mixed).homogeneous);
  // additivity on products of homogeneous elements
  KLRElement x = R.multiply(R.tau(1, {0, 0, 1}), R.y(2, {0, 0, 1}));
  KLRElement y = R.multiply(R.tau(0, {0, 0, 1}), R.tau(1, {0, 1, 0}));
  KLRElement xy = R.multiply(x, y);
  REQUIRE_FALSE(xy.is_zero());
  CHECK(R.degree(xy).homogeneous);
  CHECK(R.degree(xy).degree == R.degree(x).degree + R.degree(y).degree);
}

TEST_CASE("symmetries") {
  KLRAlgebra R = a3_algebra();
  CHECK(R.apply_a(R.idem({0, 1})) == R.idem({2, 1}));
  CHECK(R.apply_sigma(R.tau(0, {0, 1})) == CycloScalar(1, -1L) * R.tau(0, {1, 0}));
  KLRElement x = R.multiply(R.tau(0, {0, 0}), R.y(1, {0, 0}));
  CHECK(R.apply_psi(x) == R.multiply(R.y(1, {0, 0}), R.tau(0, {0, 0})));
  // psi is an antiautomorphism; sigma and a are automorphisms
  std::vector<Seq> seqs = seq_enumerate({1, 1, 1});
  for (const Seq& s : seqs) {
    KLRElement a = R.multiply(R.tau(0, s), R.y(2, s));
    Seq s2 = s;
    std::swap(s2[0], s2[1]);
    KLRElement b = R.multiply(R.tau(1, s2), R.y(0, s2));
    CHECK(R.apply_psi(R.apply_psi(a)) == a);
    CHECK(R.apply_a(R.apply_a(a)) == a);
    CHECK(R.apply_sigma(R.apply_sigma(a)) == a);
    KLRElement ba = R.multiply(b, a);
    CHECK(R.apply_psi(ba) == R.multiply(R.apply_psi(a), R.apply_psi(b)));
    CHECK(R.apply_sigma(ba) == R.multiply(R.apply_sigma(b), R.apply_sigma(a)));
    CHECK(R.apply_a(R.apply_psi(ba)) == R.apply_psi(R.apply_a(ba)));
    CHECK(R.apply_a(ba) == R.multiply(R.apply_a(b), R.apply_a(a)));
  }
}

TEST_CASE("relation suite A3 small") {
  KLRAlgebra R = a3_algebra();
  for (const Weight& nu : {Weight{1, 1, 0}, Weight{2, 1, 0}, Weight{1, 1, 1}, Weight{2, 0, 1}}) {
    RelationReport r = R.relation_suite(nu);
    CHECK(r.ok());
    for (size_t k = 0; k < std::min<size_t>(3, r.failures.size()); ++k) MESSAGE(r.failures[k]);
  }
  RelationReport a = R.associativity({2, 1, 1}, 200, 11);
  CHECK(a.ok());
}

TEST_CASE("braid defect with doubled colour") {
  KLRAlgebra R = a3_algebra();
  Seq i{0, 1, 0};
  // (t2 t1 t2 - t1 t2 t1) e_(1,2,1) = e_(1,2,1) since Q_12 = u + v
  KLRElement l1 = R.multiply(R.tau(1, {0, 0, 1}), R.multiply(R.tau(0, {0, 0, 1}), R.tau(1, i)));
  KLRElement l2 = R.multiply(R.tau(0, {1, 0, 0}), R.multiply(R.tau(1, {1, 0, 0}), R.tau(0, i)));
  CHECK(l1 - l2 == R.idem(i));
}

TEST_CASE("G2 quadratic and braid") {
  KLRAlgebra R(CartanDatum::type_D4(), DiagramAut{{2, 1, 3, 0}});
  CHECK(R.relation_suite({1, 2, 0, 0}).ok());
  CHECK(R.relation_suite({1, 1, 1, 0}).ok());
}
