#pragma once

// Exact natural-number arithmetic and primality primitives shared by the
// whole library. Nat is an unbounded non-negative integer; every operation
// here is exact.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "e8v/modarith.hpp"

namespace e8v {

using Nat = boost::multiprecision::cpp_int;

using boost::multiprecision::gcd;

inline Nat pow(Nat base, Nat exponent) {
  Nat result = 1;
  while (exponent > 0) {
    if (boost::multiprecision::bit_test(exponent, 0)) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

inline Nat pow(const Nat& base, unsigned exponent) {
  return pow(base, Nat(exponent));
}

// Primes p with 2 <= p < limit, ascending.
inline std::vector<u64> sieve(u64 limit) {
  if (limit < 3) return {};
  std::vector<bool> composite(limit, false);
  std::vector<u64> primes;
  for (u64 i = 2; i < limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (u64 j = i * i; j < limit; j += i) composite[j] = true;
  }
  return primes;
}

// Largest x with x^k <= n.
inline Nat kth_root_floor(const Nat& n, unsigned k) {
  if (k == 0) throw std::invalid_argument("kth_root_floor: k must be >= 1");
  if (n == 0) return 0;
  if (k == 1 || n == 1) return n;
  const unsigned bits = boost::multiprecision::msb(n) + 1;
  if (bits <= k) return 1;
  Nat x = Nat(1) << (bits / k + 1);
  for (;;) {
    Nat y = ((k - 1) * x + n / pow(x, k - 1)) / k;
    if (y >= x) break;
    x = y;
  }
  return x;
}

inline int moebius(const Nat& n) {
  if (n == 0) throw std::invalid_argument("moebius: n must be >= 1");
  if (n > Nat(~u64(0)))
    throw std::invalid_argument("moebius: argument out of supported range");
  u64 m = n.convert_to<u64>();
  int sign = 1;
  for (u64 p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
    if (m % p) continue;
    m /= p;
    if (m % p == 0) return 0;
    sign = -sign;
  }
  if (m > 1) sign = -sign;
  return sign;
}

namespace detail {

// Strong-pseudoprime witnesses; deterministic below 3.317e24 (Sorenson &
// Webster), and in particular for all 64-bit inputs.
inline constexpr u64 kMillerRabinBases[] = {2,  3,  5,  7,  11, 13,
                                            17, 19, 23, 29, 31, 37};

inline const Nat& deterministic_mr_bound() {
  static const Nat bound("3317044064679887385961981");
  return bound;
}

inline bool strong_probable_prime64(u64 n, u64 base) {
  base %= n;
  if (base == 0) return true;
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  u64 x = powmod64(base, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod64(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

inline bool strong_probable_prime128(const Mont128& mont, u64 base) {
  const u128 n = mont.modulus();
  if (base % n == 0) return true;
  u128 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  const u128 one = mont.one();
  const u128 minus_one = mont.sub(0, one);
  u128 x = mont.pow(mont.to_mont(base), d);
  if (x == one || x == minus_one) return true;
  for (int i = 1; i < s; ++i) {
    x = mont.mul(x, x);
    if (x == minus_one) return true;
  }
  return false;
}

inline bool strong_probable_prime(const Nat& n, const Nat& base) {
  Nat b = base % n;
  if (b == 0) return true;
  Nat d = n - 1;
  int s = 0;
  while (!boost::multiprecision::bit_test(d, 0)) d >>= 1, ++s;
  Nat x = boost::multiprecision::powm(b, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = x * x % n;
    if (x == n - 1) return true;
  }
  return false;
}

inline int jacobi(Nat a, Nat n) {
  // n odd positive.
  a %= n;
  int result = 1;
  while (a != 0) {
    while (!boost::multiprecision::bit_test(a, 0)) {
      a >>= 1;
      const unsigned r = (n % 8).convert_to<unsigned>();
      if (r == 3 || r == 5) result = -result;
    }
    a.swap(n);
    if ((a % 4) == 3 && (n % 4) == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

// Strong Lucas probable-prime test with Selfridge parameters. Callers
// guarantee n is odd, n > 2, and not a perfect square.
inline bool strong_lucas_probable_prime(const Nat& n) {
  long d_signed = 5;
  for (;;) {
    Nat d = d_signed >= 0 ? Nat(d_signed) : n - Nat(-d_signed) % n;
    const int j = jacobi(d, n);
    if (j == -1) break;
    if (j == 0 && Nat(d_signed < 0 ? -d_signed : d_signed) != n) return false;
    d_signed = d_signed > 0 ? -(d_signed + 2) : -(d_signed - 2);
  }
  // P = 1, Q = (1 - D) / 4.
  const long q_signed = (1 - d_signed) / 4;
  const Nat q_mod = q_signed >= 0 ? Nat(q_signed) % n : n - Nat(-q_signed) % n;
  const Nat d_mod =
      d_signed >= 0 ? Nat(d_signed) % n : n - Nat(-d_signed) % n;

  Nat d = n + 1;
  int s = 0;
  while (!boost::multiprecision::bit_test(d, 0)) d >>= 1, ++s;

  const auto halve = [&n](Nat x) {
    if (boost::multiprecision::bit_test(x, 0)) x += n;
    return x >> 1;
  };

  // Compute U_d, V_d, Q^d by binary ladder over the bits of d.
  Nat u = 1, v = 1, qk = q_mod;  // U_1, V_1, Q^1
  const int top = static_cast<int>(boost::multiprecision::msb(d));
  for (int i = top - 1; i >= 0; --i) {
    // double: (U,V,Q^k) -> (U*V, V^2 - 2Q^k, Q^2k)
    u = u * v % n;
    v = (v * v + 2 * n * n - 2 * qk) % n;
    qk = qk * qk % n;
    if (boost::multiprecision::bit_test(d, i)) {
      // increment: U' = (P*U + V)/2, V' = (D*U + P*V)/2 with P = 1
      Nat nu = halve((u + v) % n);
      Nat nv = halve((d_mod * u + v) % n);
      u = nu;
      v = nv;
      qk = qk * q_mod % n;
    }
  }
  if (u == 0 || v == 0) return true;
  for (int r = 1; r < s; ++r) {
    v = (v * v + 2 * n * n - 2 * qk) % n;
    qk = qk * qk % n;
    if (v == 0) return true;
  }
  return false;
}

}  // namespace detail

// Primality. Deterministic below 3.317e24 via the fixed strong-pseudoprime
// base set; above that, a Baillie-PSW-style combination (strong base-2 test
// plus strong Lucas) with no known counterexample.
inline bool is_prime(const Nat& n) {
  if (n < 2) return false;
  static const u64 kSmall[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                               41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
                               97};
  for (u64 p : kSmall) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n < 97 * 97) return true;

  if (n <= Nat(~u64(0))) {
    const u64 m = n.convert_to<u64>();
    for (u64 b : detail::kMillerRabinBases)
      if (!detail::strong_probable_prime64(m, b)) return false;
    return true;
  }

  const bool deterministic = n < detail::deterministic_mr_bound();
  const bool fits128 = boost::multiprecision::msb(n) < 128;
  if (deterministic) {
    // Bound is below 2^82, so the fast kernel always applies.
    Mont128 mont(n.convert_to<u128>());
    for (u64 b : detail::kMillerRabinBases)
      if (!detail::strong_probable_prime128(mont, b)) return false;
    return true;
  }

  if (fits128) {
    Mont128 mont(n.convert_to<u128>());
    if (!detail::strong_probable_prime128(mont, 2)) return false;
  } else {
    if (!detail::strong_probable_prime(n, 2)) return false;
  }
  const Nat root = kth_root_floor(n, 2);
  if (root * root == n) return false;
  return detail::strong_lucas_probable_prime(n);
}

}  // namespace e8v
