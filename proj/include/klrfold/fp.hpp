#pragma once

// Prime field arithmetic. The default modulus is the Mersenne prime 2^61-1,
// which is 1 mod 6 and so contains primitive 2nd, 3rd and 6th roots of unity.

#include <cstdint>
#include <stdexcept>

namespace klrfold {

class Fp {
 public:
  using u64 = std::uint64_t;

  static constexpr u64 kMersenne61 = (u64{1} << 61) - 1;
  static constexpr u64 kMersenne31 = (u64{1} << 31) - 1;

  static u64 modulus() { return p_; }
  /// Switch the modulus (global); only primes with p = 1 mod 6 are allowed.
  static void set_modulus(u64 p);

  static u64 add(u64 a, u64 b) {
    u64 r = a + b;
    return r >= p_ ? r - p_ : r;
  }
  static u64 sub(u64 a, u64 b) { return a >= b ? a - b : a + p_ - b; }
  static u64 neg(u64 a) { return a == 0 ? 0 : p_ - a; }
  static u64 mul(u64 a, u64 b) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p_);
  }
  static u64 pow(u64 a, u64 e);
  static u64 inv(u64 a);
  static u64 from_long(long v);
  /// Symmetric lift to (-p/2, p/2].
  static long to_long(u64 a);
  /// Primitive n-th root of unity (n | p-1), fixed once per modulus.
  static u64 root_of_unity(int n);

 private:
  static inline u64 p_ = kMersenne61;
};

}  // namespace klrfold
