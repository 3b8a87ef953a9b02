#include "klrfold/fp.hpp"

#include <vector>

#include "klrfold/errors.hpp"

namespace klrfold {

void Fp::set_modulus(u64 p) {
  if (p < 7 || p % 6 != 1) throw DomainError("modulus must be a prime congruent to 1 mod 6");
  p_ = p;
}

Fp::u64 Fp::pow(u64 a, u64 e) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Fp::u64 Fp::inv(u64 a) {
  if (a == 0) throw NotInvertibleError("zero has no inverse mod p");
  return pow(a, p_ - 2);
}

Fp::u64 Fp::from_long(long v) {
  if (v >= 0) return static_cast<u64>(v) % p_;
  u64 m = static_cast<u64>(-(v + 1)) % p_;  // avoids overflow at LONG_MIN
  return sub(p_ - 1, m);
}

long Fp::to_long(u64 a) {
  if (a > p_ / 2) return -static_cast<long>(p_ - a);
  return static_cast<long>(a);
}

Fp::u64 Fp::root_of_unity(int n) {
  if (n <= 0 || (p_ - 1) % static_cast<u64>(n) != 0) throw DomainError("no primitive root of unity of this order mod p");
  static const int kPrimes[] = {2, 3, 5, 7, 11, 13};
  int rest = n;
  for (int q : kPrimes)
    while (rest % q == 0) rest /= q;
  if (rest != 1) throw DomainError("root of unity orders must have prime factors <= 13");
  // h has full q-primary order for every small prime q dividing p-1, so the
  // powers h^((p-1)/n) form a compatible system: omega_d = omega_n^(n/d).
  static u64 cached_p = 0, h = 0;
  if (cached_p != p_) {
    for (u64 g = 2;; ++g) {
      bool ok = true;
      for (int q : kPrimes)
        if ((p_ - 1) % static_cast<u64>(q) == 0 && pow(g, (p_ - 1) / static_cast<u64>(q)) == 1) ok = false;
      if (ok) {
        h = g;
        break;
      }
    }
    cached_p = p_;
  }
  return pow(h, (p_ - 1) / static_cast<u64>(n));
}

}  // namespace klrfold
