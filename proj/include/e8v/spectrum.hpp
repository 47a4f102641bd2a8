#pragma once

// The element-order superset nu(E8(q)): 67 values in 11 families, spectrum
// membership queries, divisibility-maximal orders, and the small-vs-large
// witness check used by the exclusion argument.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "e8v/cyclotomic.hpp"
#include "e8v/nat.hpp"

namespace e8v {

// Rule table for p(Phi), the maximal characteristic power in the spectrum of
// the Lie-type subsystem Phi: p(Phi) is the smallest power of p that is
// >= kappa(Phi). Overridable from a JSON file {"A2": 3, ...}.
class PPhiTable {
 public:
  PPhiTable()
      : kappa_{{"A2", 3},  {"A3", 4},  {"A4", 5},  {"A5", 6}, {"D5", 9},
               {"D6", 11}, {"E6", 13}, {"E7", 19}, {"E8", 31}} {}

  static PPhiTable load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read p(Phi) table: " + path.string());
    nlohmann::json doc;
    in >> doc;
    PPhiTable table;
    for (const auto& [label, value] : doc.items()) {
      if (!table.kappa_.count(label))
        throw std::runtime_error("unknown p(Phi) label: " + label);
      table.kappa_[label] = value.get<unsigned>();
    }
    return table;
  }

  unsigned kappa(const std::string& label) const {
    auto it = kappa_.find(label);
    if (it == kappa_.end())
      throw std::invalid_argument("unknown p(Phi) label: " + label);
    return it->second;
  }

 private:
  std::map<std::string, unsigned> kappa_;
};

// Smallest power of p reaching the configured bound for the given subsystem.
inline Nat p_phi(const std::string& label, const Nat& p, const PPhiTable& table) {
  const unsigned bound = table.kappa(label);
  Nat power = p;
  while (power < bound) power *= p;
  return power;
}

struct SpectrumEntry {
  int family;        // 1..11
  std::string expr;  // the polynomial expression this value instantiates
  Nat value;
};

using OrderList = std::vector<SpectrumEntry>;

// The 67 order values for E8(q), grouped by family. gcd-divided entries are
// checked for exact division.
inline OrderList nu_e8(const PrimePowerQ& qq, const PPhiTable& table) {
  const Nat& q = qq.q;
  const Nat& p = qq.s;
  const auto P = [&](unsigned e) { return pow(q, e); };

  OrderList out;
  out.reserve(67);
  const auto add = [&](int family, std::string expr, Nat value) {
    out.push_back({family, std::move(expr), std::move(value)});
  };
  const auto exact = [](const Nat& num, const Nat& den) {
    if (num % den != 0) throw std::logic_error("nu_e8: inexact gcd division");
    return num / den;
  };

  const Nat g2 = gcd(Nat(2), q - 1);
  const Nat g3m = gcd(Nat(3), q - 1);
  const Nat g3p = gcd(Nat(3), q + 1);

  // family (1): orders coprime to the characteristic
  add(1, "(q+1)(q^2+q+1)(q^5-1)", (q + 1) * (P(2) + q + 1) * (P(5) - 1));
  add(1, "(q-1)(q^2-q+1)(q^5+1)", (q - 1) * (P(2) - q + 1) * (P(5) + 1));
  add(1, "(q+1)(q^2+1)(q^5-1)", (q + 1) * (P(2) + 1) * (P(5) - 1));
  add(1, "(q-1)(q^2+1)(q^5+1)", (q - 1) * (P(2) + 1) * (P(5) + 1));
  add(1, "(q+1)(q^7-1)", (q + 1) * (P(7) - 1));
  add(1, "(q-1)(q^7+1)", (q - 1) * (P(7) + 1));
  add(1, "q^8-1", P(8) - 1);
  add(1, "(q+1)(q^3-1)(q^4+1)", (q + 1) * (P(3) - 1) * (P(4) + 1));
  add(1, "(q-1)(q^3+1)(q^4+1)", (q - 1) * (P(3) + 1) * (P(4) + 1));
  add(1, "(q^2+1)(q^6-1)", (P(2) + 1) * (P(6) - 1));
  add(1, "(q^2-1)(q^6+1)", (P(2) - 1) * (P(6) + 1));
  add(1, "(q^2-1)(q^2+q+1)(q^4-q^2+1)", (P(2) - 1) * (P(2) + q + 1) * (P(4) - P(2) + 1));
  add(1, "(q^2-1)(q^2-q+1)(q^4-q^2+1)", (P(2) - 1) * (P(2) - q + 1) * (P(4) - P(2) + 1));
  add(1, "(q^2-1)(q^6-q^3+1)", (P(2) - 1) * (P(6) - P(3) + 1));
  add(1, "(q^2-1)(q^6+q^3+1)", (P(2) - 1) * (P(6) + P(3) + 1));
  add(1, "(q^2+q+1)(q^6+q^3+1)/(3,q-1)", exact((P(2) + q + 1) * (P(6) + P(3) + 1), g3m));
  add(1, "(q^2-q+1)(q^6-q^3+1)/(3,q+1)", exact((P(2) - q + 1) * (P(6) - P(3) + 1), g3p));
  add(1, "q^8+q^7-q^5-q^4-q^3+q+1", P(8) + P(7) - P(5) - P(4) - P(3) + q + 1);
  add(1, "q^8-q^7+q^5-q^4+q^3-q+1", P(8) - P(7) + P(5) - P(4) + P(3) - q + 1);
  add(1, "q^8-q^4+1", P(8) - P(4) + 1);
  add(1, "q^8-q^6+q^4-q^2+1", P(8) - P(6) + P(4) - P(2) + 1);

  // family (2): multiplied by the characteristic p
  add(2, "p(q^2-q+1)(q^5+1)", p * (P(2) - q + 1) * (P(5) + 1));
  add(2, "p(q^2+q+1)(q^5-1)", p * (P(2) + q + 1) * (P(5) - 1));
  add(2, "p(q+1)(q^6-q^3+1)", p * (q + 1) * (P(6) - P(3) + 1));
  add(2, "p(q-1)(q^6+q^3+1)", p * (q - 1) * (P(6) + P(3) + 1));
  add(2, "p(q^7+1)", p * (P(7) + 1));
  add(2, "p(q^7-1)", p * (P(7) - 1));
  add(2, "p(q^3-1)(q^4-q^2+1)", p * (P(3) - 1) * (P(4) - P(2) + 1));
  add(2, "p(q^3+1)(q^4-q^2+1)", p * (P(3) + 1) * (P(4) - P(2) + 1));
  add(2, "p(q^8-1)/((q-1)(2,q-1))", p * exact(P(8) - 1, (q - 1) * g2));
  add(2, "p(q^8-1)/((q+1)(2,q-1))", p * exact(P(8) - 1, (q + 1) * g2));
  add(2, "p(q^6+1)", p * (P(6) + 1));

  // families (3)-(10): multiplied by p(Phi) for the named subsystem
  const Nat pA2 = p_phi("A2", p, table);
  add(3, "p(A2)(q^6-1)", pA2 * (P(6) - 1));
  add(3, "p(A2)(q^6+q^3+1)", pA2 * (P(6) + P(3) + 1));
  add(3, "p(A2)(q^6-q^3+1)", pA2 * (P(6) - P(3) + 1));
  add(3, "p(A2)(q^2+q+1)(q^4-q^2+1)", pA2 * (P(2) + q + 1) * (P(4) - P(2) + 1));
  add(3, "p(A2)(q^2-q+1)(q^4-q^2+1)", pA2 * (P(2) - q + 1) * (P(4) - P(2) + 1));
  add(3, "p(A2)(q^2-q+1)(q^4-1)", pA2 * (P(2) - q + 1) * (P(4) - 1));
  add(3, "p(A2)(q^2+q+1)(q^4-1)", pA2 * (P(2) + q + 1) * (P(4) - 1));
  add(3, "p(A2)(q^2-1)(q^4+1)", pA2 * (P(2) - 1) * (P(4) + 1));
  add(3, "p(A2)(q+1)(q^5-1)", pA2 * (q + 1) * (P(5) - 1));
  add(3, "p(A2)(q-1)(q^5+1)", pA2 * (q - 1) * (P(5) + 1));

  const Nat pA3 = p_phi("A3", p, table);
  add(4, "p(A3)(q^5-1)", pA3 * (P(5) - 1));
  add(4, "p(A3)(q^5+1)", pA3 * (P(5) + 1));
  add(4, "p(A3)(q^4+1)(q-1)", pA3 * (P(4) + 1) * (q - 1));
  add(4, "p(A3)(q^4+1)(q+1)", pA3 * (P(4) + 1) * (q + 1));
  add(4, "p(A3)(q^3-1)(q^2+1)", pA3 * (P(3) - 1) * (P(2) + 1));
  add(4, "p(A3)(q^3+1)(q^2+1)", pA3 * (P(3) + 1) * (P(2) + 1));

  const Nat pA4 = p_phi("A4", p, table);
  add(5, "p(A4)(q^5-1)/(q-1)", pA4 * exact(P(5) - 1, q - 1));
  add(5, "p(A4)(q^5+1)/(q+1)", pA4 * exact(P(5) + 1, q + 1));
  add(5, "p(A4)(q^4-1)", pA4 * (P(4) - 1));

  const Nat pA5 = p_phi("A5", p, table);
  add(6, "p(A5)(q^3-1)(q+1)", pA5 * (P(3) - 1) * (q + 1));
  add(6, "p(A5)(q^3+1)(q-1)", pA5 * (P(3) + 1) * (q - 1));
  add(6, "p(A5)(q^4+1)", pA5 * (P(4) + 1));
  add(6, "p(A5)(q^4-1)/(2,q-1)", pA5 * exact(P(4) - 1, g2));
  add(6, "p(A5)(q^4-q^2+1)", pA5 * (P(4) - P(2) + 1));

  const Nat pD5 = p_phi("D5", p, table);
  add(7, "p(D5)(q^2+1)(q-1)", pD5 * (P(2) + 1) * (q - 1));
  add(7, "p(D5)(q^2+1)(q+1)", pD5 * (P(2) + 1) * (q + 1));
  add(7, "p(D5)(q^3-1)", pD5 * (P(3) - 1));
  add(7, "p(D5)(q^3+1)", pD5 * (P(3) + 1));

  add(8, "p(D6)(q^2+1)", p_phi("D6", p, table) * (P(2) + 1));

  const Nat pE6 = p_phi("E6", p, table);
  add(9, "p(E6)(q^2-q+1)", pE6 * (P(2) - q + 1));
  add(9, "p(E6)(q^2+q+1)", pE6 * (P(2) + q + 1));
  add(9, "p(E6)(q^2-1)", pE6 * (P(2) - 1));

  const Nat pE7 = p_phi("E7", p, table);
  add(10, "p(E7)(q-1)", pE7 * (q - 1));
  add(10, "p(E7)(q+1)", pE7 * (q + 1));

  add(11, "p(E8)", p_phi("E8", p, table));
  return out;
}

// True iff m divides at least one nu entry; the spectrum is closed under
// divisibility and every element order divides one of the 67 values.
inline bool in_spectrum(const PrimePowerQ& q, const Nat& m, const PPhiTable& table) {
  if (m == 0) return false;
  for (const SpectrumEntry& e : nu_e8(q, table))
    if (e.value % m == 0) return true;
  return false;
}

// Divisibility-maximal elements of nu(E8(q)), ascending, deduplicated.
inline std::vector<Nat> mu_e8(const PrimePowerQ& q, const PPhiTable& table) {
  std::vector<Nat> values;
  for (const SpectrumEntry& e : nu_e8(q, table)) values.push_back(e.value);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<Nat> maximal;
  for (std::size_t i = 0; i < values.size(); ++i) {
    bool divides_later = false;
    for (std::size_t j = i + 1; j < values.size() && !divides_later; ++j)
      divides_later = values[j] % values[i] == 0;
    if (!divides_later) maximal.push_back(values[i]);
  }
  return maximal;
}

struct Lemma5Result {
  Nat witness;    // T = (q^2+1)(q^6-1), an element order of E8(q)
  bool excluded;  // T divides no nu(E8(p)) entry
};

// Exclusion witness for the pair p < q: T lies in the spectrum of E8(q) but
// must not lie in the spectrum of E8(p). A non-excluded result is a finding
// to report, never to drop.
inline Lemma5Result lemma5_check(const Nat& p, const Nat& q, const PPhiTable& table) {
  if (!is_prime(p)) throw std::invalid_argument("lemma5_check: p must be prime");
  auto qq = PrimePowerQ::parse(q);
  if (!qq) throw std::invalid_argument("lemma5_check: q must be a prime power");
  if (p >= q) throw std::invalid_argument("lemma5_check: requires p < q");
  const auto cls = [](const Nat& n) {
    const unsigned r = (n % 5).convert_to<unsigned>();
    return r == 0 || r == 1 || r == 4;
  };
  if (!cls(p) || !cls(q))
    throw std::invalid_argument("lemma5_check: p and q must be 0, 1 or 4 mod 5");
  const Nat t = (pow(q, 2u) + 1) * (pow(q, 6u) - 1);
  const PrimePowerQ pp{p, p, 1};
  return {t, !in_spectrum(pp, t, table)};
}

}  // namespace e8v
