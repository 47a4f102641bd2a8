#pragma once

// Complete factorization of a natural number as an ascending list of
// (prime, exponent) pairs.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "e8v/nat.hpp"

namespace e8v {

struct Factorization {
  Nat value = 1;
  std::vector<std::pair<Nat, unsigned>> factors;  // primes strictly ascending

  Nat product() const {
    Nat p = 1;
    for (const auto& [prime, exp] : factors) p *= pow(prime, exp);
    return p;
  }

  // Product, primality and ordering checks; used on cache load and in tests.
  bool verify() const {
    Nat prev = 0;
    for (const auto& [prime, exp] : factors) {
      if (exp == 0 || prime <= prev || !is_prime(prime)) return false;
      prev = prime;
    }
    return product() == value;
  }

  std::vector<Nat> distinct_primes() const {
    std::vector<Nat> out;
    out.reserve(factors.size());
    for (const auto& [prime, exp] : factors) out.push_back(prime);
    return out;
  }

  std::string to_string() const {
    if (factors.empty()) return "1";
    std::string s;
    for (const auto& [prime, exp] : factors) {
      if (!s.empty()) s += " * ";
      s += prime.str();
      if (exp > 1) s += "^" + std::to_string(exp);
    }
    return s;
  }
};

}  // namespace e8v
