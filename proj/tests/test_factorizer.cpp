#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <random>

#include "e8v/factor_cache.hpp"
#include "e8v/factorizer.hpp"

using e8v::FactorCache;
using e8v::Factorization;
using e8v::Nat;

TEST_CASE("factor of 1 is empty") {
  const Factorization f = e8v::factor(Nat(1));
  CHECK(f.value == 1);
  CHECK(f.factors.empty());
  CHECK(f.verify());
  CHECK_THROWS_AS(e8v::factor(Nat(0)), std::invalid_argument);
}

TEST_CASE("factor small composites") {
  const Factorization f = e8v::factor(Nat(49981));
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0] == std::pair<Nat, unsigned>{151, 1});
  CHECK(f.factors[1] == std::pair<Nat, unsigned>{331, 1});
  CHECK(f.to_string() == "151 * 331");

  const Factorization fermat = e8v::factor(Nat(4294967297ULL));
  REQUIRE(fermat.factors.size() == 2);
  CHECK(fermat.factors[0].first == 641);
  CHECK(fermat.factors[1].first == 6700417);
}

TEST_CASE("factor prime powers and mixed values") {
  const Factorization f = e8v::factor(e8v::pow(Nat(2), 20u) * 3 * 3 * 17);
  CHECK(f.factors ==
        std::vector<std::pair<Nat, unsigned>>{{2, 20}, {3, 2}, {17, 1}});
  // perfect power of a large prime, beyond trial division
  const Nat p("1000000000039");
  const Factorization g = e8v::factor(p * p * p);
  CHECK(g.factors == std::vector<std::pair<Nat, unsigned>>{{p, 3}});
}

TEST_CASE("prime_divisors") {
  CHECK(e8v::prime_divisors(Nat(1)).empty());
  CHECK(e8v::prime_divisors(Nat(1057)) == std::vector<Nat>{7, 151});
  CHECK(e8v::prime_divisors(Nat(1024)) == std::vector<Nat>{2});
}

TEST_CASE("cyclotomic hint narrows trial division without changing results") {
  // 49981 = Phi_15(4) = 151 * 331; both primes are 1 mod 15
  const Factorization hinted = e8v::factor(Nat(49981), nullptr, 15);
  CHECK(hinted.factors == e8v::factor(Nat(49981)).factors);
}

TEST_CASE("random composites round-trip") {
  std::mt19937_64 rng(987654321);
  const auto random_prime = [&rng](unsigned bits) {
    for (;;) {
      Nat c = (Nat(rng()) << 64 | rng()) % (Nat(1) << bits);
      c |= Nat(1) << (bits - 1);
      c |= 1;
      if (e8v::is_prime(c)) return c;
    }
  };
  for (int iter = 0; iter < 50; ++iter) {
    const int count = static_cast<int>(rng() % 3 + 2);
    std::map<Nat, unsigned> expected;
    Nat n = 1;
    for (int i = 0; i < count; ++i) {
      const Nat p = random_prime(static_cast<unsigned>(rng() % 17 + 32));
      ++expected[p];
      n *= p;
    }
    const Factorization f = e8v::factor(n);
    CHECK(f.factors == std::vector<std::pair<Nat, unsigned>>(expected.begin(),
                                                             expected.end()));
    CHECK(f.verify());
  }
}

TEST_CASE("cache round trip and stats") {
  const auto path = std::filesystem::temp_directory_path() / "e8v_test_cache.json";
  std::filesystem::remove(path);

  FactorCache cache = FactorCache::load(path);  // missing file: empty cache
  CHECK(cache.stats().entries == 0);

  const Factorization f = e8v::factor(Nat(49981), &cache);
  CHECK(cache.stats().entries == 1);
  cache.save();

  FactorCache reloaded = FactorCache::load(path);
  auto hit = reloaded.lookup(Nat(49981));
  REQUIRE(hit.has_value());
  CHECK(hit->factors == f.factors);
  CHECK(reloaded.stats().rejected_on_load == 0);
  std::filesystem::remove(path);
}

TEST_CASE("corrupt cache entries are dropped on load") {
  const auto path = std::filesystem::temp_directory_path() / "e8v_bad_cache.json";
  {
    std::ofstream out(path);
    out << R"({"49981": [["151",1],["330",1]], "1057": [["7",1],["151",1]]})";
  }
  const FactorCache cache = FactorCache::load(path);
  CHECK(cache.stats().entries == 1);
  CHECK(cache.stats().rejected_on_load == 1);
  CHECK_FALSE(cache.lookup(Nat(49981)).has_value());
  CHECK(cache.lookup(Nat(1057)).has_value());
  std::filesystem::remove(path);
}

TEST_CASE("factor consults the cache before computing") {
  FactorCache cache;
  Factorization fake;
  fake.value = 35;
  fake.factors = {{5, 1}, {7, 1}};
  cache.insert(fake);
  const Factorization f = e8v::factor(Nat(35), &cache);
  CHECK(f.factors == fake.factors);
  CHECK(cache.stats().hits == 1);
}
