#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "stabtherm/graph.hpp"
#include "stabtherm/statevector.hpp"
#include "stabtherm/tableau.hpp"

using stabtherm::Graph;
using stabtherm::PauliString;

TEST_CASE("edge bookkeeping and validation") {
  Graph g(4);
  g.add_edge(1, 2);
  g.add_edge(4, 2);
  CHECK(g.num_edges() == 2);
  CHECK(g.has_edge(2, 1));
  CHECK(g.has_edge(2, 4));
  CHECK(!g.has_edge(1, 4));
  CHECK(g.degree(2) == 2);
  CHECK(g.edges() == std::vector<std::pair<uint32_t, uint32_t>>{{1, 2}, {2, 4}});

  CHECK_THROWS_AS(g.add_edge(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(1, 5), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(1, 2), std::invalid_argument);  // duplicate
}

TEST_CASE("family graphs have the advertised neighborhoods") {
  const Graph a = stabtherm::g1_graph(8);
  CHECK(a.num_edges() == 12);
  for (uint32_t i = 1; i <= 8; ++i) CHECK(a.degree(i) == 3);
  CHECK(stabtherm::graph_generator(a, 1).str() == "+X1 Z4 Z5 Z6");

  const Graph b = stabtherm::g2_graph(9);
  CHECK(b.num_edges() == 9);
  for (uint32_t i = 1; i <= 9; ++i) CHECK(b.degree(i) == 2);
  CHECK(stabtherm::graph_generator(b, 1).str() == "+X1 Z5 Z6");

  const Graph c = stabtherm::cycle_graph(5);
  CHECK(c.num_edges() == 5);
  CHECK(stabtherm::graph_generator(c, 1).str() == "+X1 Z2 Z5");
  CHECK(stabtherm::graph_generator(c, 3).str() == "+Z2 X3 Z4");

  CHECK_THROWS_AS(stabtherm::g1_graph(7), std::invalid_argument);
  CHECK_THROWS_AS(stabtherm::g1_graph(6), std::invalid_argument);
  CHECK_THROWS_AS(stabtherm::g2_graph(8), std::invalid_argument);
  CHECK_THROWS_AS(stabtherm::g2_graph(3), std::invalid_argument);
  CHECK_THROWS_AS(stabtherm::cycle_graph(2), std::invalid_argument);
}

TEST_CASE("graph stabilizer equals the group of its generators") {
  const Graph g = stabtherm::g2_graph(7);
  std::vector<PauliString> gens;
  for (uint32_t i = 1; i <= 7; ++i)
    gens.push_back(stabtherm::graph_generator(g, i));
  CHECK(stabtherm::graph_to_stabilizer(g) ==
        stabtherm::StabilizerTableau::from_generators(7, gens));
}

TEST_CASE("graph file round-trip and parse failures") {
  const Graph g = stabtherm::g1_graph(10);
  CHECK(stabtherm::graph_from_file_text(stabtherm::graph_to_file_text(g)) == g);

  using stabtherm::GraphParseError;
  CHECK_THROWS_AS(stabtherm::graph_from_file_text("1 2\n"), GraphParseError);
  CHECK_THROWS_AS(stabtherm::graph_from_file_text("N=3\n1\n"), GraphParseError);
  CHECK_THROWS_AS(stabtherm::graph_from_file_text("N=3\n1 4\n"),
                  GraphParseError);
  CHECK_THROWS_AS(stabtherm::graph_from_file_text("N=3\n1 2\n2 1\n"),
                  GraphParseError);
  const Graph h =
      stabtherm::graph_from_file_text("# comment\nN=3\n\n1 2\n 2 3 \n");
  CHECK(h.num_edges() == 2);
}

TEST_CASE("dot export names the graph and lists every edge") {
  const auto dot = stabtherm::graph_to_dot(stabtherm::cycle_graph(3), "tri");
  CHECK(dot.find("graph tri") != std::string::npos);
  CHECK(dot.find("1 -- 2") != std::string::npos);
  CHECK(dot.find("2 -- 3") != std::string::npos);
  CHECK(dot.find("1 -- 3") != std::string::npos);
}

TEST_CASE("random graphs reproduce from the seed and honor the edge odds") {
  std::mt19937_64 a(7), b(7), c(8);
  const Graph g1 = stabtherm::random_graph(9, a);
  const Graph g2 = stabtherm::random_graph(9, b);
  CHECK(g1 == g2);
  const Graph g3 = stabtherm::random_graph(9, c);
  CHECK(g1 != g3);  // overwhelmingly likely for 36 candidate edges

  std::mt19937_64 rng(1);
  CHECK(stabtherm::random_graph(8, rng, 0.0).num_edges() == 0);
  CHECK(stabtherm::random_graph(8, rng, 1.0).num_edges() == 28);
}

TEST_CASE("site relabelling transports edges and the stabilizer group") {
  const Graph g = stabtherm::cycle_graph(4);
  const std::vector<uint32_t> perm = {2, 3, 4, 1};  // rotate labels
  const Graph p = g.permuted(perm);
  CHECK(p.has_edge(2, 3));
  CHECK(p == g);  // a cycle is invariant under rotation
  const Graph q = g.permuted({1, 3, 2, 4});
  CHECK(q.has_edge(1, 3));
  CHECK(!q.has_edge(1, 2));
  CHECK_THROWS_AS(g.permuted({1, 1, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(g.permuted({1, 2, 3}), std::invalid_argument);
}

TEST_CASE("graph state amplitudes carry the edge-parity signs") {
  Graph tri(3);
  tri.add_edge(1, 2);
  tri.add_edge(2, 3);
  tri.add_edge(1, 3);
  const auto amps = stabtherm::graph_statevector(tri);
  REQUIRE(amps.size() == 8);
  const double mag = 1.0 / std::sqrt(8.0);
  for (const auto& a : amps) CHECK(std::abs(std::abs(a.real()) - mag) < 1e-12);
  CHECK(amps[0].real() > 0);                   // |000>: no edges inside
  CHECK(amps[0b011].real() < 0);               // sites {1,2}: one edge
  CHECK(amps[0b101].real() < 0);               // sites {1,3}: one edge
  CHECK(amps[0b111].real() < 0);               // all three edges: parity odd
  CHECK(amps[0b001].real() > 0);               // single site: nothing inside

  // Same state the tableau route computes, up to global phase.
  const auto via_tableau =
      stabtherm::tableau_statevector(stabtherm::graph_to_stabilizer(tri));
  CHECK(std::abs(std::abs(stabtherm::inner(amps, via_tableau)) - 1.0) < 1e-12);

  CHECK_THROWS_AS(stabtherm::graph_statevector(stabtherm::cycle_graph(21)),
                  stabtherm::ResourceLimitError);
}
