#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "e8v/report_io.hpp"
#include "e8v/verifier.hpp"

using e8v::CandidateSet;
using e8v::Nat;

TEST_CASE("candidate_primes") {
  CHECK(e8v::candidate_primes(30) == std::vector<Nat>{5, 11, 19, 29});
  CHECK(e8v::candidate_primes(5).empty());
}

TEST_CASE("candidate_prime_powers") {
  CHECK(e8v::candidate_prime_powers(30) ==
        std::vector<Nat>{4, 5, 9, 11, 16, 19, 25, 29});
  CHECK(e8v::candidate_prime_powers(4).empty());
  const auto primes = e8v::candidate_primes(300);
  const auto powers = e8v::candidate_prime_powers(300);
  for (const Nat& r : primes)
    CHECK(std::binary_search(powers.begin(), powers.end(), r));
}

TEST_CASE("alternate congruence classes") {
  const std::set<unsigned> other = {2, 3};
  CHECK(e8v::candidate_primes(20, other) == std::vector<Nat>{2, 3, 7, 13, 17});
  CHECK(e8v::candidate_prime_powers(10, other) == std::vector<Nat>{2, 3, 7, 8});
}

TEST_CASE("check_prime flags subset containments with the smallest witness") {
  CandidateSet candidates;
  candidates.bound = 20;
  candidates.primes_r = {Nat(11)};
  candidates.prime_powers_theta = {Nat(4), Nat(5), Nat(11)};

  e8v::PiSetMap pi_sets;
  pi_sets[Nat(4)] = {2, 3, 5};
  pi_sets[Nat(5)] = {2, 5, 7};
  pi_sets[Nat(11)] = {2, 3, 5, 7, 11};

  const auto record = e8v::check_prime(Nat(11), candidates, pi_sets);
  CHECK_FALSE(record.valid);
  CHECK(record.witness == e8v::VerificationRecord::Witness::kTheta);
  CHECK(record.witness_theta == 4);
  CHECK(record.pi_size == 5);

  // J4 fires only when every theta passes
  pi_sets[Nat(11)] = {2, 3, 5, 7, 11, 23, 29, 31, 37, 43, 47};
  pi_sets[Nat(4)] = {2, 3, 13};
  pi_sets[Nat(5)] = {2, 5, 13};
  const auto j4_record = e8v::check_prime(Nat(11), candidates, pi_sets);
  CHECK_FALSE(j4_record.valid);
  CHECK(j4_record.witness == e8v::VerificationRecord::Witness::kJ4);

  pi_sets[Nat(11)] = {2, 3, 5, 7, 11};
  const auto ok = e8v::check_prime(Nat(11), candidates, pi_sets);
  CHECK(ok.valid);
  CHECK(ok.witness == e8v::VerificationRecord::Witness::kNone);

  pi_sets.erase(Nat(4));
  CHECK_THROWS_WITH(e8v::check_prime(Nat(11), candidates, pi_sets),
                    Catch::Matchers::ContainsSubstring("theta = 4"));
}

TEST_CASE("run on a small bound finds no exceptional primes") {
  e8v::FactorCache cache;
  const auto report = e8v::run(100, 2, cache);
  CHECK(report.exceptional.empty());
  CHECK(report.prime_count == e8v::candidate_primes(100).size());
  for (const auto& record : report.records) {
    CHECK(record.valid);
    CHECK(record.pi_size >= 17);
  }

  // Independent pi oracle: the appendix-style divisor-polynomial route.
  for (const Nat& theta : e8v::candidate_prime_powers(100)) {
    const Nat& q = theta;
    std::set<Nat> oracle;
    const auto qq = e8v::PrimePowerQ::parse(q);
    REQUIRE(qq.has_value());
    oracle.insert(qq->s);
    const std::vector<Nat> holders = {
        q,
        q - 1,
        q + 1,
        e8v::pow(q, 4u) + 1,
        e8v::pow(q, 5u) - 1,
        e8v::pow(q, 5u) + 1,
        e8v::pow(q, 6u) + 1,
        e8v::pow(q, 7u) - 1,
        e8v::pow(q, 7u) + 1,
        e8v::pow(q, 8u) - e8v::pow(q, 4u) + 1,
        e8v::pow(q, 9u) - 1,
        e8v::pow(q, 9u) + 1,
        e8v::pow(q, 10u) - e8v::pow(q, 5u) + 1,
        e8v::pow(q, 10u) + 1,
        e8v::pow(q, 10u) + e8v::pow(q, 5u) + 1};
    for (const Nat& h : holders)
      for (const Nat& p : e8v::prime_divisors(h, &cache)) oracle.insert(p);
    const auto via_phi = e8v::pi_e8(q, &cache);
    if (oracle != via_phi) {
      CAPTURE(q.str());
      FAIL("holder oracle disagrees with pi_e8");
    }
  }
  SUCCEED();
}

TEST_CASE("report serialization") {
  e8v::FactorCache cache;
  const auto report = e8v::run(30, 1, cache);
  const auto j = e8v::to_json(report);
  CHECK(j["bound"] == 30);
  CHECK(j["records"].size() == report.records.size());
  CHECK(j["exceptional"].empty());

  std::ostringstream csv;
  e8v::write_csv(csv, report);
  const std::string text = csv.str();
  CHECK(text.rfind("r,valid,witness_kind,witness_value,elapsed_ms\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') ==
        static_cast<long>(report.records.size()) + 1);
}

TEST_CASE("run is deterministic across parallelism") {
  e8v::FactorCache cache;
  const auto a = e8v::run(60, 1, cache);
  const auto b = e8v::run(60, 4, cache);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].r == b.records[i].r);
    CHECK(a.records[i].valid == b.records[i].valid);
    CHECK(a.records[i].witness == b.records[i].witness);
    CHECK(a.records[i].witness_theta == b.records[i].witness_theta);
    CHECK(a.records[i].pi_size == b.records[i].pi_size);
  }
  CHECK(a.exceptional == b.exceptional);
}
