#pragma once

// Fixed-width modular arithmetic kernels for the primality and
// factorization hot loops. Two tiers: 64-bit moduli via __uint128_t
// products, and 128-bit odd moduli via Montgomery reduction.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>

namespace e8v {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod64(u64 a, u64 b, u64 m) {
  return static_cast<u64>((u128(a) * b) % m);
}

inline u64 powmod64(u64 base, u64 exp, u64 m) {
  u64 r = m > 1 ? 1 : 0;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod64(r, base, m);
    base = mulmod64(base, base, m);
    exp >>= 1;
  }
  return r;
}

// Montgomery context for an odd modulus below 2^128.
class Mont128 {
 public:
  explicit Mont128(u128 n) : n_(n) {
    // inv = n^-1 mod 2^128 by Newton iteration.
    u128 inv = n;
    for (int i = 0; i < 7; ++i) inv *= 2 - n * inv;
    neg_inv_ = ~inv + 1;  // -n^-1 mod 2^128
    // r2 = 2^256 mod n, from 2^128 mod n by 128 modular doublings.
    u128 r = (~n + 1) % n;  // 2^128 mod n
    for (int i = 0; i < 128; ++i) r = (r >= n - r) ? r - (n - r) : r + r;
    r2_ = r;
    one_ = to_mont(1);
  }

  u128 modulus() const { return n_; }
  u128 one() const { return one_; }

  u128 to_mont(u128 a) const { return mul(a % n_, r2_); }
  u128 from_mont(u128 a) const { return redc(0, a); }

  // Montgomery product of two residues.
  u128 mul(u128 a, u128 b) const {
    u128 lo, hi;
    mul_wide(a, b, hi, lo);
    return redc(hi, lo);
  }

  u128 add(u128 a, u128 b) const {
    u128 s = a + b;
    if (s < a || s >= n_) s -= n_;
    return s;
  }

  u128 sub(u128 a, u128 b) const { return a >= b ? a - b : a + n_ - b; }

  u128 pow(u128 base_mont, u128 exp) const {
    u128 r = one_;
    u128 b = base_mont;
    while (exp) {
      if (exp & 1) r = mul(r, b);
      b = mul(b, b);
      exp >>= 1;
    }
    return r;
  }

 private:
  static void mul_wide(u128 a, u128 b, u128& hi, u128& lo) {
    const u64 a0 = static_cast<u64>(a), a1 = static_cast<u64>(a >> 64);
    const u64 b0 = static_cast<u64>(b), b1 = static_cast<u64>(b >> 64);
    const u128 p00 = u128(a0) * b0;
    const u128 p01 = u128(a0) * b1;
    const u128 p10 = u128(a1) * b0;
    const u128 p11 = u128(a1) * b1;
    u128 mid = (p00 >> 64) + static_cast<u64>(p01) + static_cast<u64>(p10);
    lo = (mid << 64) | static_cast<u64>(p00);
    hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
  }

  u128 redc(u128 hi, u128 lo) const {
    const u128 m = lo * neg_inv_;
    u128 mn_hi, mn_lo;
    mul_wide(m, n_, mn_hi, mn_lo);
    const u128 sum_lo = lo + mn_lo;
    const u128 carry = sum_lo < lo ? 1 : 0;
    u128 r = hi + mn_hi;
    const bool overflow = r < hi;
    const u128 r2 = r + carry;
    const bool overflow2 = r2 < r;
    r = r2;
    if (overflow || overflow2 || r >= n_) r -= n_;
    return r;
  }

  u128 n_;
  u128 neg_inv_;
  u128 r2_;
  u128 one_;
};

// Montgomery context over fixed-width unsigned integers, for odd moduli
// with at least one spare bit (n < 2^(Bits-1)). U holds residues, W the
// double-width products.
template <typename U, typename W, unsigned Bits>
class MontFixed {
 public:
  explicit MontFixed(const U& n) : n_(n) {
    U inv = n;
    for (unsigned i = 0; i < 8; ++i) inv *= U(2) - n * inv;  // mod 2^Bits
    neg_inv_ = U(0) - inv;
    r2_ = static_cast<U>((W(1) << Bits) % W(n));        // 2^Bits mod n
    r2_ = static_cast<U>(W(r2_) * W(r2_) % W(n));       // 2^(2 Bits) mod n
    one_ = to_mont(U(1));
  }

  const U& modulus() const { return n_; }
  const U& one() const { return one_; }

  U to_mont(const U& a) const { return mul(a, r2_); }

  U mul(const U& a, const U& b) const { return redc(W(a) * W(b)); }

  U add(const U& a, const U& b) const {
    U s = a + b;  // no overflow: operands < n < 2^(Bits-1)
    if (s >= n_) s -= n_;
    return s;
  }

  U sub(const U& a, const U& b) const { return a >= b ? a - b : a + n_ - b; }

 private:
  U redc(W t) const {
    const U m = static_cast<U>(t) * neg_inv_;
    t = (t + W(m) * W(n_)) >> Bits;
    if (t >= W(n_)) t -= W(n_);
    return static_cast<U>(t);
  }

  U n_;
  U neg_inv_;
  U r2_;
  U one_;
};

using Mont256 =
    MontFixed<boost::multiprecision::uint256_t, boost::multiprecision::uint512_t, 256>;

}  // namespace e8v
