#include <random>

#include "doctest.h"
#include "klrfold/errors.hpp"
#include "klrfold/linalg.hpp"

using namespace klrfold;
using namespace klrfold::linalg;

namespace {

Dense random_dense(int r, int c, unsigned seed, int rank_cap = -1) {
  std::mt19937_64 g(seed);
  if (rank_cap < 0) {
    Dense d(r, c);
    for (auto& x : d.a) x = g() % Fp::modulus();
    return d;
  }
  Dense a = random_dense(r, rank_cap, seed + 1), b = random_dense(rank_cap, c, seed + 2);
  return multiply(a, b, Exec::serial);
}

}  // namespace

TEST_CASE("field arithmetic") {
  CHECK(Fp::mul(Fp::inv(12345), 12345) == 1);
  CHECK(Fp::to_long(Fp::from_long(-7)) == -7);
  CHECK(Fp::from_long(-1) == Fp::modulus() - 1);
  for (int n : {1, 2, 3, 6}) {
    Fp::u64 w = Fp::root_of_unity(n);
    CHECK(Fp::pow(w, n) == 1);
    for (int k = 1; k < n; ++k) CHECK(Fp::pow(w, k) != 1);
  }
  CHECK_THROWS_AS(Fp::inv(0), NotInvertibleError);
  CHECK_THROWS_AS(Fp::root_of_unity(17), DomainError);
}

TEST_CASE("rank and nullspace") {
  Dense d = random_dense(40, 50, 3, 17);
  CHECK(rank(d, Exec::serial) == 17);
  Dense n = nullspace(d, Exec::serial);
  CHECK(n.rows == 33);
  for (int k = 0; k < n.rows; ++k)
    for (int r = 0; r < d.rows; ++r) {
      Fp::u64 acc = 0;
      for (int c = 0; c < d.cols; ++c) acc = Fp::add(acc, Fp::mul(d(r, c), n(k, c)));
      CHECK(acc == 0);
    }
  Dense sq = random_dense(20, 20, 5);
  CHECK(multiply(sq, inverse(sq)) == Dense::identity(20));
  CHECK_THROWS_AS(inverse(random_dense(10, 10, 9, 4)), NotInvertibleError);
}

TEST_CASE("serial and parallel kernels agree") {
  for (unsigned seed = 0; seed < 5; ++seed) {
    Dense d = random_dense(150, 120, seed, 60 + static_cast<int>(seed));
    Dense a = d, b = d;
    CHECK(rref(a, Exec::serial) == rref(b, Exec::parallel));
    CHECK(a == b);
    Dense x = random_dense(70, 80, seed + 10), y = random_dense(80, 90, seed + 20);
    CHECK(multiply(x, y, Exec::serial) == multiply(x, y, Exec::parallel));
    Sparse s = Sparse::from_dense(random_dense(3000, 2000, seed, 3));
    Vec v(2000);
    for (size_t i = 0; i < v.size(); ++i) v[i] = (i * 7919 + seed) % 1000;
    CHECK(apply(s, v, Exec::serial) == apply(s, v, Exec::parallel));
  }
}

TEST_CASE("sparse helpers") {
  Dense d = random_dense(7, 9, 4);
  d(2, 3) = 0;
  Sparse s = Sparse::from_dense(d);
  CHECK(s.to_dense() == d);
  CHECK(s.transpose().transpose().to_dense() == d);
  Dense e = random_dense(9, 5, 8);
  CHECK(multiply(s, Sparse::from_dense(e)).to_dense() == multiply(d, e));
}
