#include <catch2/catch_amalgamated.hpp>

#include "e8v/primegraph.hpp"

using e8v::Nat;
using e8v::PPhiTable;
using e8v::PrimeGraph;

TEST_CASE("build_graph basics") {
  const PrimeGraph empty = e8v::build_graph({});
  CHECK(empty.vertices.empty());
  CHECK(e8v::component_count(empty) == 0);

  const PrimeGraph six = e8v::build_graph({Nat(6)});
  CHECK(six.vertices == std::vector<Nat>{2, 3});
  CHECK(six.edges.size() == 1);
  CHECK(e8v::component_count(six) == 1);

  const PrimeGraph two = e8v::build_graph({Nat(6), Nat(35)});
  CHECK(two.vertices == std::vector<Nat>{2, 3, 5, 7});
  CHECK(two.edges == std::set<std::pair<Nat, Nat>>{{2, 3}, {5, 7}});
  CHECK(e8v::component_count(two) == 2);
}

TEST_CASE("adding divisors of existing orders changes nothing") {
  const std::vector<Nat> base = {Nat(30), Nat(77), Nat(169)};
  std::vector<Nat> augmented = base;
  for (const Nat& n : base)
    for (Nat d = 1; d <= n; ++d)
      if (n % d == 0) augmented.push_back(d);
  const PrimeGraph a = e8v::build_graph(base);
  const PrimeGraph b = e8v::build_graph(augmented);
  CHECK(a.vertices == b.vertices);
  CHECK(a.edges == b.edges);
  CHECK(a.components == b.components);
}

TEST_CASE("gk_e8(4) has five components and the Phi_15 component is {151, 331}") {
  const auto q = e8v::PrimePowerQ::parse(Nat(4));
  REQUIRE(q.has_value());
  const PrimeGraph graph = e8v::gk_e8(*q, PPhiTable());
  CHECK(e8v::component_count(graph) == 5);

  const auto* comp = graph.component_of(Nat(151));
  REQUIRE(comp != nullptr);
  CHECK(*comp == std::vector<Nat>{151, 331});

  // Oracle for the component: 151 and 331 divide exactly one nu entry,
  // the Phi_15(4) one, and nothing else.
  int count151 = 0, count331 = 0;
  for (const auto& e : e8v::nu_e8(*q, PPhiTable())) {
    if (e.value % 151 == 0) ++count151;
    if (e.value % 331 == 0) ++count331;
  }
  CHECK(count151 == 1);
  CHECK(count331 == 1);
  CHECK(e8v::phi_value(15, Nat(4)) == Nat(151) * 331);
}

TEST_CASE("gk_e8 vertex set equals pi_e8") {
  for (unsigned qv : {4, 5, 9, 11, 16, 19, 25}) {
    const auto q = e8v::PrimePowerQ::parse(Nat(qv));
    REQUIRE(q.has_value());
    const PrimeGraph graph = e8v::gk_e8(*q, PPhiTable());
    const auto pi = e8v::pi_e8(*q);
    if (std::set<Nat>(graph.vertices.begin(), graph.vertices.end()) != pi) {
      CAPTURE(qv);
      FAIL("vertex set differs from pi_e8");
    }
  }
  SUCCEED();
}
