#pragma once

// The verification pipeline: enumerate candidate primes r and prime powers
// theta below a bound (restricted to configured residue classes mod 5),
// compute every pi(E8(theta)), and flag each r for which some pi(E8(theta))
// with theta < r, or pi(J4), is contained in pi(E8(r)). The flagged primes
// form the exceptional list.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "e8v/cyclotomic.hpp"
#include "e8v/factor_cache.hpp"
#include "e8v/nat.hpp"

namespace e8v {

inline const std::set<unsigned>& default_congruence_classes() {
  static const std::set<unsigned> classes = {0, 1, 4};
  return classes;
}

inline const std::vector<Nat>& j4_primes() {
  static const std::vector<Nat> primes = {2, 3, 5, 7, 11, 23, 29, 31, 37, 43};
  return primes;
}

inline std::vector<Nat> candidate_primes(
    u64 bound, const std::set<unsigned>& classes = default_congruence_classes()) {
  std::vector<Nat> out;
  for (u64 p : sieve(bound))
    if (classes.count(static_cast<unsigned>(p % 5))) out.emplace_back(p);
  return out;
}

inline std::vector<Nat> candidate_prime_powers(
    u64 bound, const std::set<unsigned>& classes = default_congruence_classes()) {
  std::vector<Nat> out;
  for (u64 s : sieve(bound)) {
    for (u64 q = s; q < bound; q *= s) {
      if (classes.count(static_cast<unsigned>(q % 5))) out.emplace_back(q);
      if (q > (bound - 1) / s) break;  // next power would overflow / exceed
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct CandidateSet {
  u64 bound = 0;
  std::vector<Nat> primes_r;
  std::vector<Nat> prime_powers_theta;

  static CandidateSet make(u64 bound,
                           const std::set<unsigned>& classes = default_congruence_classes()) {
    return {bound, candidate_primes(bound, classes),
            candidate_prime_powers(bound, classes)};
  }
};

struct VerificationRecord {
  enum class Witness { kNone, kTheta, kJ4 };

  Nat r;
  bool valid = true;
  Witness witness = Witness::kNone;
  Nat witness_theta;  // set when witness == kTheta
  double elapsed_ms = 0;
  std::size_t pi_size = 0;
};

inline std::string witness_kind_name(VerificationRecord::Witness w) {
  switch (w) {
    case VerificationRecord::Witness::kNone: return "none";
    case VerificationRecord::Witness::kTheta: return "theta";
    case VerificationRecord::Witness::kJ4: return "J4";
  }
  return "?";
}

using PiSetMap = std::map<Nat, std::vector<Nat>>;  // theta -> sorted pi(E8(theta))

// Checks one candidate prime r against all smaller candidate prime powers
// and against pi(J4). The witness is the smallest failing theta; J4 is
// reported only when every theta test passes.
inline VerificationRecord check_prime(const Nat& r, const CandidateSet& candidates,
                                      const PiSetMap& pi_sets,
                                      const std::vector<Nat>& j4 = j4_primes()) {
  const auto pi_of = [&pi_sets](const Nat& theta) -> const std::vector<Nat>& {
    auto it = pi_sets.find(theta);
    if (it == pi_sets.end())
      throw std::runtime_error("missing pi-set for theta = " + theta.str());
    return it->second;
  };

  VerificationRecord record;
  record.r = r;
  const std::vector<Nat>& pi_r = pi_of(r);
  record.pi_size = pi_r.size();
  for (const Nat& theta : candidates.prime_powers_theta) {
    if (theta >= r) break;
    const std::vector<Nat>& pi_theta = pi_of(theta);
    if (std::includes(pi_r.begin(), pi_r.end(), pi_theta.begin(), pi_theta.end())) {
      record.valid = false;
      record.witness = VerificationRecord::Witness::kTheta;
      record.witness_theta = theta;
      return record;
    }
  }
  if (std::includes(pi_r.begin(), pi_r.end(), j4.begin(), j4.end())) {
    record.valid = false;
    record.witness = VerificationRecord::Witness::kJ4;
  }
  return record;
}

struct Report {
  u64 bound = 0;
  std::set<unsigned> classes;
  std::size_t prime_count = 0;
  std::size_t prime_power_count = 0;
  std::vector<VerificationRecord> records;
  std::vector<Nat> exceptional;  // invalid r, ascending
  double total_ms = 0;
  FactorCache::Stats cache_stats;
};

// Full pipeline. pi-sets are computed for ascending theta, in parallel up to
// `parallelism` workers sharing the factor cache; records are deterministic
// regardless of parallelism (timings aside).
inline Report run(u64 bound, unsigned parallelism, FactorCache& cache,
                  const std::set<unsigned>& classes = default_congruence_classes()) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  const auto ms_since = [](clock::time_point start) {
    return std::chrono::duration<double, std::milli>(clock::now() - start).count();
  };

  Report report;
  report.bound = bound;
  report.classes = classes;
  CandidateSet candidates = CandidateSet::make(bound, classes);
  report.prime_count = candidates.primes_r.size();
  report.prime_power_count = candidates.prime_powers_theta.size();

  PiSetMap pi_sets;
  std::map<Nat, double> pi_elapsed_ms;
  std::mutex result_mutex;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string failure;

  const auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= candidates.prime_powers_theta.size() || failed.load()) return;
      const Nat& theta = candidates.prime_powers_theta[i];
      try {
        const auto start = clock::now();
        std::set<Nat> pi = pi_e8(theta, &cache);
        const double elapsed = ms_since(start);
        std::lock_guard lock(result_mutex);
        pi_sets.emplace(theta, std::vector<Nat>(pi.begin(), pi.end()));
        pi_elapsed_ms.emplace(theta, elapsed);
      } catch (const std::exception& e) {
        std::lock_guard lock(result_mutex);
        failure = "pi(E8(" + theta.str() + ")) failed: " + e.what();
        failed.store(true);
        return;
      }
    }
  };

  if (parallelism <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (unsigned i = 0; i < parallelism; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (failed.load()) throw std::runtime_error(failure);

  for (const Nat& r : candidates.primes_r) {
    const auto start = clock::now();
    VerificationRecord record = check_prime(r, candidates, pi_sets);
    record.elapsed_ms = pi_elapsed_ms.at(r) + ms_since(start);
    if (!record.valid) report.exceptional.push_back(r);
    report.records.push_back(std::move(record));
  }
  report.total_ms = ms_since(t0);
  report.cache_stats = cache.stats();
  return report;
}

}  // namespace e8v
