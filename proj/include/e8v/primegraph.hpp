#pragma once

// Prime graph of a set of positive integers: vertices are the primes
// dividing the members, an edge joins two primes when one member is
// divisible by both. Specialization to the Gruenberg-Kegel graph of E8(q),
// built from the nu(E8(q)) order list.

#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "e8v/factor_cache.hpp"
#include "e8v/factorizer.hpp"
#include "e8v/spectrum.hpp"

namespace e8v {

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];  // path halving
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

struct PrimeGraph {
  std::vector<Nat> vertices;                 // ascending primes
  std::set<std::pair<Nat, Nat>> edges;       // unordered pairs stored (a, b) with a < b
  std::vector<std::vector<Nat>> components;  // sorted by smallest member

  std::size_t component_count() const { return components.size(); }

  const std::vector<Nat>* component_of(const Nat& p) const {
    for (const auto& comp : components)
      if (std::binary_search(comp.begin(), comp.end(), p)) return &comp;
    return nullptr;
  }
};

inline PrimeGraph build_graph(const std::vector<Nat>& orders, FactorCache* cache = nullptr) {
  std::set<Nat> vertex_set;
  std::vector<std::vector<Nat>> per_order;
  per_order.reserve(orders.size());
  for (const Nat& order : orders) {
    per_order.push_back(prime_divisors(order, cache));
    vertex_set.insert(per_order.back().begin(), per_order.back().end());
  }

  PrimeGraph graph;
  graph.vertices.assign(vertex_set.begin(), vertex_set.end());
  std::map<Nat, std::size_t> index;
  for (std::size_t i = 0; i < graph.vertices.size(); ++i)
    index[graph.vertices[i]] = i;

  detail::UnionFind uf(graph.vertices.size());
  for (const auto& primes : per_order) {
    for (std::size_t i = 0; i < primes.size(); ++i) {
      for (std::size_t j = i + 1; j < primes.size(); ++j) {
        graph.edges.emplace(primes[i], primes[j]);
        uf.unite(index[primes[i]], index[primes[j]]);
      }
    }
  }

  std::map<std::size_t, std::vector<Nat>> by_root;
  for (std::size_t i = 0; i < graph.vertices.size(); ++i)
    by_root[uf.find(i)].push_back(graph.vertices[i]);
  for (auto& [root, members] : by_root)
    graph.components.push_back(std::move(members));
  std::sort(graph.components.begin(), graph.components.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return graph;
}

// GK(E8(q)); coincides with the vanishing prime graph of E8(q).
inline PrimeGraph gk_e8(const PrimePowerQ& q, const PPhiTable& table,
                        FactorCache* cache = nullptr) {
  std::vector<Nat> orders;
  for (const SpectrumEntry& e : nu_e8(q, table)) orders.push_back(e.value);
  return build_graph(orders, cache);
}

inline std::size_t component_count(const PrimeGraph& graph) {
  return graph.component_count();
}

}  // namespace e8v
