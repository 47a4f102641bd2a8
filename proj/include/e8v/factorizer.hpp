#pragma once

// Complete factorization of naturals up to the ~10^40 range used by the
// pipeline. Strategy: cache lookup, trial division below 1e5 (optionally
// restricted by a cyclotomic congruence hint), perfect-power detection for
// exponents up to 6, then Pollard rho with Brent cycle detection and batched
// gcd on the remaining composite cofactors.

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "e8v/factor_cache.hpp"
#include "e8v/factorization.hpp"
#include "e8v/modarith.hpp"
#include "e8v/nat.hpp"

namespace e8v {

inline constexpr u64 kTrialDivisionBound = 100000;
inline constexpr int kMaxPerfectPowerExponent = 6;
inline constexpr int kRhoGcdBatch = 128;

namespace detail {

inline const std::vector<u64>& trial_primes() {
  static const std::vector<u64> primes = sieve(kTrialDivisionBound);
  return primes;
}

// Primes usable as trial divisors of Phi_d(q): primes dividing d together
// with primes = 1 (mod d). Everything else is excluded by the primitive
// prime divisor congruence.
inline const std::vector<u64>& trial_primes_for_cyclotomic(unsigned d) {
  static std::map<unsigned, std::vector<u64>> lists;
  static std::mutex mu;
  std::lock_guard lock(mu);
  auto it = lists.find(d);
  if (it != lists.end()) return it->second;
  std::vector<u64> out;
  for (u64 p : trial_primes())
    if (d % p == 0 || p % d == 1) out.push_back(p);
  return lists.emplace(d, std::move(out)).first->second;
}

inline u64 gcd64(u64 a, u64 b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

inline u128 gcd128(u128 a, u128 b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

// Brent-cycle rho with a fixed polynomial schedule x^2 + c, c = 1, 2, ...
// Returns a nontrivial factor of an odd composite n. Deterministic, so
// factorizations (and hence cache contents) are reproducible.
inline u64 pollard_brent64(u64 n) {
  for (u64 c = 1;; ++c) {
    u64 y = 2, r = 1, q = 1, g = 1, x = 0, ys = 0;
    const auto step = [&](u64 v) { return (mulmod64(v, v, n) + c) % n; };
    while (g == 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = step(y);
      for (u64 k = 0; k < r && g == 1; k += kRhoGcdBatch) {
        ys = y;
        const u64 lim = std::min<u64>(kRhoGcdBatch, r - k);
        for (u64 i = 0; i < lim; ++i) {
          y = step(y);
          q = mulmod64(q, x > y ? x - y : y - x, n);
        }
        g = gcd64(q, n);
      }
      r *= 2;
    }
    if (g == n) {
      g = 1;
      while (g == 1) {
        ys = step(ys);
        g = gcd64(x > ys ? x - ys : ys - x, n);
      }
    }
    if (g != n) return g;
  }
}

inline u128 pollard_brent128(u128 n) {
  const Mont128 mont(n);
  for (u64 c = 1;; ++c) {
    const u128 cm = mont.to_mont(c);
    u128 y = mont.to_mont(2), r = 1, g = 1, x = 0, ys = 0;
    u128 q = mont.one();
    const auto step = [&](u128 v) { return mont.add(mont.mul(v, v), cm); };
    while (g == 1) {
      x = y;
      for (u128 i = 0; i < r; ++i) y = step(y);
      for (u128 k = 0; k < r && g == 1; k += kRhoGcdBatch) {
        ys = y;
        const u128 lim = std::min<u128>(kRhoGcdBatch, r - k);
        for (u128 i = 0; i < lim; ++i) {
          y = step(y);
          q = mont.mul(q, mont.sub(x, y));
        }
        g = gcd128(q, n);
      }
      r *= 2;
    }
    if (g == n) {
      g = 1;
      while (g == 1) {
        ys = step(ys);
        g = gcd128(mont.sub(x, ys), n);
      }
    }
    if (g != n) return g;
  }
}

// Same algorithm over a fixed-width Montgomery context (n < 2^255).
inline boost::multiprecision::uint256_t pollard_brent256(
    const boost::multiprecision::uint256_t& n) {
  using U = boost::multiprecision::uint256_t;
  const Mont256 mont(n);
  const auto gcd_u = [](U a, U b) {
    while (b != 0) {
      a %= b;
      a.swap(b);
    }
    return a;
  };
  for (u64 c = 1;; ++c) {
    const U cm = mont.to_mont(U(c));
    U y = mont.to_mont(U(2)), x, ys;
    U q = mont.one();
    U g = 1;
    u64 r = 1;
    const auto step = [&](const U& v) { return mont.add(mont.mul(v, v), cm); };
    while (g == 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = step(y);
      for (u64 k = 0; k < r && g == 1; k += kRhoGcdBatch) {
        ys = y;
        const u64 lim = std::min<u64>(kRhoGcdBatch, r - k);
        for (u64 i = 0; i < lim; ++i) {
          y = step(y);
          q = mont.mul(q, mont.sub(x, y));
        }
        g = gcd_u(q, n);
      }
      r *= 2;
    }
    if (g == n) {
      g = 1;
      while (g == 1) {
        ys = step(ys);
        g = gcd_u(mont.sub(x, ys), n);
      }
    }
    if (g != n) return g;
  }
}

inline Nat pollard_brent_big(const Nat& n) {
  for (u64 c = 1;; ++c) {
    Nat y = 2, q = 1, g = 1, x, ys;
    u64 r = 1;
    const auto step = [&](const Nat& v) { return (v * v + c) % n; };
    while (g == 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = step(y);
      for (u64 k = 0; k < r && g == 1; k += kRhoGcdBatch) {
        ys = y;
        const u64 lim = std::min<u64>(kRhoGcdBatch, r - k);
        for (u64 i = 0; i < lim; ++i) {
          y = step(y);
          q = q * (x > y ? x - y : y - x) % n;
        }
        g = gcd(q, n);
      }
      r *= 2;
    }
    if (g == n) {
      g = 1;
      while (g == 1) {
        ys = step(ys);
        g = gcd(x > ys ? x - ys : ys - x, n);
      }
    }
    if (g != n) return g;
  }
}

inline Nat rho_split(const Nat& n) {
  if (n <= Nat(~u64(0)))
    return Nat(pollard_brent64(n.convert_to<u64>()));
  if (boost::multiprecision::msb(n) < 128)
    return Nat(pollard_brent128(n.convert_to<u128>()));
  if (boost::multiprecision::msb(n) < 255)
    return Nat(pollard_brent256(
        n.convert_to<boost::multiprecision::uint256_t>()));
  return pollard_brent_big(n);
}

}  // namespace detail

// Factors n completely. `cyclotomic_index` may be set to d when the caller
// knows n = Phi_d(q) with q coprime to the relevant primes; it only narrows
// trial division, correctness never depends on it.
inline Factorization factor(const Nat& n, FactorCache* cache = nullptr,
                            std::optional<unsigned> cyclotomic_index = std::nullopt) {
  if (n == 0) throw std::invalid_argument("factor: n must be >= 1");
  if (cache) {
    if (auto hit = cache->lookup(n)) return *hit;
  }

  std::map<Nat, unsigned> found;
  Nat rest = n;

  const std::vector<u64>& divisors =
      cyclotomic_index && *cyclotomic_index > 1
          ? detail::trial_primes_for_cyclotomic(*cyclotomic_index)
          : detail::trial_primes();
  for (u64 p : divisors) {
    if (rest == 1) break;
    if (!cyclotomic_index && Nat(p) * p > rest) break;
    while (rest % p == 0) {
      rest /= p;
      ++found[Nat(p)];
    }
  }

  // Cofactor worklist; each entry carries the multiplicity it contributes.
  std::vector<std::pair<Nat, unsigned>> work;
  if (rest > 1) work.emplace_back(rest, 1);
  while (!work.empty()) {
    auto [m, mult] = work.back();
    work.pop_back();
    while (boost::multiprecision::bit_test(m, 0) == false && m > 1) {
      found[Nat(2)] += mult;
      m >>= 1;
    }
    if (m == 1) continue;
    if (is_prime(m)) {
      found[m] += mult;
      continue;
    }
    bool split = false;
    for (int k = kMaxPerfectPowerExponent; k >= 2; --k) {
      Nat root = kth_root_floor(m, static_cast<unsigned>(k));
      if (pow(root, static_cast<unsigned>(k)) == m) {
        work.emplace_back(root, mult * static_cast<unsigned>(k));
        split = true;
        break;
      }
    }
    if (split) continue;
    Nat d = detail::rho_split(m);
    work.emplace_back(d, mult);
    work.emplace_back(m / d, mult);
  }

  Factorization result;
  result.value = n;
  result.factors.assign(found.begin(), found.end());
  if (cache) cache->insert(result);
  return result;
}

// Distinct primes dividing n, ascending. Empty for n = 1.
inline std::vector<Nat> prime_divisors(const Nat& n, FactorCache* cache = nullptr,
                                       std::optional<unsigned> cyclotomic_index = std::nullopt) {
  return factor(n, cache, cyclotomic_index).distinct_primes();
}

}  // namespace e8v
