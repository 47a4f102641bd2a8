#pragma once

// Exact cyclotomic polynomial values, the |E8(q)| order formula, and the
// prime-divisor set pi(E8(q)).

#include <array>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "e8v/factor_cache.hpp"
#include "e8v/factorizer.hpp"
#include "e8v/nat.hpp"

namespace e8v {

// Degrees d_i with q^{d_i} - 1 appearing in |E8(q)| = q^120 * prod(q^{d_i} - 1).
inline constexpr std::array<unsigned, 8> kE8Degrees = {2, 8, 12, 14, 18, 20, 24, 30};

// Divisors of the E8 degrees: the cyclotomic indices whose Phi_d(q) values
// cover every prime divisor of |E8(q)| apart from the characteristic.
inline constexpr std::array<unsigned, 17> kE8CyclotomicIndices = {
    1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 15, 18, 20, 24, 30};

// Phi_d(q) via the Moebius product prod_{e|d} (q^e - 1)^{mu(d/e)}; both
// partial products are formed first so every division is exact.
inline Nat phi_value(unsigned d, const Nat& q) {
  if (d < 1) throw std::invalid_argument("phi_value: d must be >= 1");
  if (q < 2) throw std::invalid_argument("phi_value: q must be >= 2");
  Nat numerator = 1, denominator = 1;
  for (unsigned e = 1; e <= d; ++e) {
    if (d % e) continue;
    const int mu = moebius(Nat(d / e));
    if (mu == 1) numerator *= pow(q, e) - 1;
    if (mu == -1) denominator *= pow(q, e) - 1;
  }
  if (numerator % denominator != 0)
    throw std::logic_error("phi_value: inexact division");
  return numerator / denominator;
}

inline Nat e8_order(const Nat& q) {
  if (q < 2) throw std::invalid_argument("e8_order: q must be >= 2");
  Nat order = pow(q, 120u);
  for (unsigned d : kE8Degrees) order *= pow(q, d) - 1;
  return order;
}

// A prime power q = s^t with its canonical decomposition.
struct PrimePowerQ {
  Nat q;
  Nat s;        // characteristic
  unsigned t = 1;

  static std::optional<PrimePowerQ> parse(const Nat& q) {
    if (q < 2) return std::nullopt;
    const unsigned max_t = boost::multiprecision::msb(q) + 1;
    for (unsigned t = 1; t <= max_t; ++t) {
      Nat root = kth_root_floor(q, t);
      if (pow(root, t) == q && is_prime(root)) return PrimePowerQ{q, root, t};
    }
    return std::nullopt;
  }
};

// pi(E8(q)): the characteristic together with the prime divisors of
// Phi_d(q) over all 17 indices. Equals the prime divisors of e8_order(q).
inline std::set<Nat> pi_e8(const PrimePowerQ& q, FactorCache* cache = nullptr) {
  std::set<Nat> primes{q.s};
  for (unsigned d : kE8CyclotomicIndices) {
    for (const Nat& p : prime_divisors(phi_value(d, q.q), cache, d))
      primes.insert(p);
  }
  return primes;
}

inline std::set<Nat> pi_e8(const Nat& q, FactorCache* cache = nullptr) {
  auto parsed = PrimePowerQ::parse(q);
  if (!parsed) throw std::invalid_argument("pi_e8: q = " + q.str() + " is not a prime power");
  return pi_e8(*parsed, cache);
}

}  // namespace e8v
