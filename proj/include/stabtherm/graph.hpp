#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stabtherm/bits.hpp"
#include "stabtherm/tableau.hpp"

namespace stabtherm {

struct GraphError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct GraphParseError : GraphError {
  explicit GraphParseError(const std::string& what, size_t line)
      : GraphError(what + " (line " + std::to_string(line) + ")"), line(line) {}
  size_t line;
};

/* Simple undirected graph on sites 1..n, no loops, no multi-edges.
   Stored as a symmetric adjacency bitmap. */
class Graph {
 public:
  explicit Graph(uint32_t n);

  uint32_t num_sites() const { return n_; }
  void add_edge(uint32_t u, uint32_t v);
  bool has_edge(uint32_t u, uint32_t v) const;
  const BitVec& neighbors(uint32_t u) const;
  uint32_t degree(uint32_t u) const;
  size_t num_edges() const;

  // Edges as (u, v) with u < v, ascending.
  std::vector<std::pair<uint32_t, uint32_t>> edges() const;

  // Graph with sites relabelled: site u becomes perm[u-1] (a permutation of 1..n).
  Graph permuted(const std::vector<uint32_t>& perm) const;

  bool operator==(const Graph&) const = default;

 private:
  uint32_t n_ = 0;
  std::vector<BitVec> adj_;  // adj_[u-1] bit (v-1)
};

/* Ladder-with-rungs family: even n >= 8, site i adjacent to
   i + n/2 - 1 and i + n/2 (indices mod n).  Every vertex has the
   same three-site "neighborhood footprint" {i + n/2 - 1, i + n/2, i + n/2 + 1}
   appearing in its stabilizer generator. */
Graph g1_graph(uint32_t n);

/* Circulant family for odd n >= 5: site i adjacent to i + (n-1)/2 (mod n).
   Each vertex ends up with exactly two neighbors, i + (n-1)/2 and i + (n+1)/2. */
Graph g2_graph(uint32_t n);

/* Plain cycle 1-2-...-n-1, n >= 3. */
Graph cycle_graph(uint32_t n);

/* Erdos-Renyi style random graph: each pair independently an edge with
   probability num/2^64 against a raw 64-bit draw, so results depend only on
   the generator stream, not on library distribution internals. */
Graph random_graph(uint32_t n, std::mt19937_64& rng, double edge_prob = 0.5);

/* Stabilizer group of the graph state: generator K_i = X_i prod_{j ~ i} Z_j. */
PauliString graph_generator(const Graph& g, uint32_t site);
StabilizerTableau graph_to_stabilizer(const Graph& g);

/* Text format: "N=<n>" header, then one "u v" pair per line; '#' comments
   and blank lines are skipped. */
std::string graph_to_file_text(const Graph& g);
Graph graph_from_file_text(const std::string& text);

/* Graphviz rendering of the graph. */
std::string graph_to_dot(const Graph& g, const std::string& name = "g");

}  // namespace stabtherm
