#include <catch2/catch_amalgamated.hpp>

#include "e8v/cyclotomic.hpp"

using e8v::Nat;
using e8v::PrimePowerQ;

TEST_CASE("phi_value small cases") {
  CHECK(e8v::phi_value(1, Nat(5)) == 4);
  CHECK(e8v::phi_value(2, Nat(5)) == 6);
  CHECK(e8v::phi_value(12, Nat(2)) == 13);
  CHECK(e8v::phi_value(15, Nat(2)) == 151);  // 32767 / 217
  CHECK_THROWS_AS(e8v::phi_value(0, Nat(2)), std::invalid_argument);
  CHECK_THROWS_AS(e8v::phi_value(3, Nat(1)), std::invalid_argument);
}

TEST_CASE("cyclotomic product identity up to n = 30") {
  for (unsigned n = 1; n <= 30; ++n) {
    for (unsigned q = 2; q <= 50; ++q) {
      Nat product = 1;
      for (unsigned d = 1; d <= n; ++d)
        if (n % d == 0) product *= e8v::phi_value(d, Nat(q));
      if (product != e8v::pow(Nat(q), n) - 1) {
        CAPTURE(n, q);
        FAIL("cyclotomic product identity violated");
      }
    }
  }
  SUCCEED();
}

TEST_CASE("index set equals the divisors of the E8 degrees") {
  std::set<unsigned> divisors;
  for (unsigned deg : e8v::kE8Degrees)
    for (unsigned d = 1; d <= deg; ++d)
      if (deg % d == 0) divisors.insert(d);
  CHECK(std::set<unsigned>(e8v::kE8CyclotomicIndices.begin(),
                           e8v::kE8CyclotomicIndices.end()) == divisors);
}

TEST_CASE("e8_order structure at q = 2 and 3") {
  const Nat order2 = e8v::e8_order(Nat(2));
  CHECK(order2 % e8v::pow(Nat(2), 120u) == 0);
  CHECK(order2 % e8v::pow(Nat(2), 121u) != 0);
  for (unsigned d : e8v::kE8CyclotomicIndices)
    CHECK(e8v::e8_order(Nat(3)) % e8v::phi_value(d, Nat(3)) == 0);
}

TEST_CASE("prime power parsing") {
  auto q16 = PrimePowerQ::parse(Nat(16));
  REQUIRE(q16.has_value());
  CHECK(q16->s == 2);
  CHECK(q16->t == 4);
  auto q9973 = PrimePowerQ::parse(Nat(9973));
  REQUIRE(q9973.has_value());
  CHECK(q9973->t == 1);
  CHECK_FALSE(PrimePowerQ::parse(Nat(6)).has_value());
  CHECK_FALSE(PrimePowerQ::parse(Nat(1)).has_value());
}

TEST_CASE("pi_e8(2) matches the trial-division oracle") {
  // Oracle: factor q^d - 1 over the E8 degrees directly; all factors < 1000.
  std::set<Nat> oracle{2};
  for (unsigned d : e8v::kE8Degrees) {
    e8v::u64 v = (1ULL << d) - 1;
    for (e8v::u64 p = 3; p <= v; p += 2)
      while (v % p == 0) {
        oracle.insert(Nat(p));
        v /= p;
      }
  }
  const std::set<Nat> expected{2,  3,  5,  7,   11,  13,  17,  19,
                               31, 41, 43, 73, 127, 151, 241, 331};
  CHECK(oracle == expected);
  CHECK(e8v::pi_e8(Nat(2)) == expected);
}

TEST_CASE("pi_e8 small sanity checks") {
  const auto pi4 = e8v::pi_e8(Nat(4));
  CHECK(pi4.count(2) == 1);
  CHECK(pi4.count(3) == 1);
  CHECK(pi4.count(5) == 1);
  for (const Nat& p : e8v::pi_e8(Nat(2))) CHECK(pi4.count(p) == 1);
  CHECK(e8v::pi_e8(Nat(9973)).count(9973) == 1);
  CHECK_THROWS_AS(e8v::pi_e8(Nat(6)), std::invalid_argument);
}

TEST_CASE("pi_e8 equals the prime divisors of the full group order") {
  for (unsigned q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19}) {
    const auto via_phi = e8v::pi_e8(Nat(q));
    const auto via_order = e8v::prime_divisors(e8v::e8_order(Nat(q)));
    if (via_phi != std::set<Nat>(via_order.begin(), via_order.end())) {
      CAPTURE(q);
      FAIL("pi_e8 disagrees with direct order factorization");
    }
  }
  SUCCEED();
}
