#include "stabtherm/graph.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace stabtherm {

Graph::Graph(uint32_t n) : n_(n) {
  if (n == 0) throw GraphError("graph needs at least one site");
  adj_.assign(n, BitVec(n));
}

void Graph::add_edge(uint32_t u, uint32_t v) {
  if (u < 1 || u > n_ || v < 1 || v > n_)
    throw GraphError("edge endpoint out of range: " + std::to_string(u) + " " +
                     std::to_string(v));
  if (u == v) throw GraphError("self-loop at site " + std::to_string(u));
  if (adj_[u - 1].get(v - 1))
    throw GraphError("duplicate edge " + std::to_string(u) + " " +
                     std::to_string(v));
  adj_[u - 1].set(v - 1, true);
  adj_[v - 1].set(u - 1, true);
}

bool Graph::has_edge(uint32_t u, uint32_t v) const {
  if (u < 1 || u > n_ || v < 1 || v > n_ || u == v) return false;
  return adj_[u - 1].get(v - 1);
}

const BitVec& Graph::neighbors(uint32_t u) const {
  if (u < 1 || u > n_) throw GraphError("site out of range");
  return adj_[u - 1];
}

uint32_t Graph::degree(uint32_t u) const {
  return static_cast<uint32_t>(neighbors(u).popcount());
}

size_t Graph::num_edges() const {
  size_t twice = 0;
  for (const auto& row : adj_) twice += row.popcount();
  return twice / 2;
}

std::vector<std::pair<uint32_t, uint32_t>> Graph::edges() const {
  std::vector<std::pair<uint32_t, uint32_t>> out;
  for (uint32_t u = 1; u <= n_; ++u)
    for (uint32_t v = u + 1; v <= n_; ++v)
      if (adj_[u - 1].get(v - 1)) out.emplace_back(u, v);
  return out;
}

Graph Graph::permuted(const std::vector<uint32_t>& perm) const {
  if (perm.size() != n_) throw GraphError("permutation has wrong length");
  std::vector<bool> seen(n_, false);
  for (uint32_t p : perm) {
    if (p < 1 || p > n_ || seen[p - 1])
      throw GraphError("not a permutation of 1..n");
    seen[p - 1] = true;
  }
  Graph out(n_);
  for (const auto& [u, v] : edges()) out.add_edge(perm[u - 1], perm[v - 1]);
  return out;
}

Graph g1_graph(uint32_t n) {
  if (n < 8 || n % 2 != 0)
    throw GraphError("this family needs even n >= 8, got " + std::to_string(n));
  Graph g(n);
  const uint32_t h = n / 2;
  auto wrap = [n](uint32_t v) { return (v - 1) % n + 1; };
  for (uint32_t i = 1; i <= n; ++i) {
    uint32_t a = wrap(i + h - 1), b = wrap(i + h);
    if (!g.has_edge(i, a)) g.add_edge(i, a);
    if (!g.has_edge(i, b)) g.add_edge(i, b);
  }
  return g;
}

Graph g2_graph(uint32_t n) {
  if (n < 5 || n % 2 == 0)
    throw GraphError("this family needs odd n >= 5, got " + std::to_string(n));
  Graph g(n);
  const uint32_t h = (n - 1) / 2;
  auto wrap = [n](uint32_t v) { return (v - 1) % n + 1; };
  for (uint32_t i = 1; i <= n; ++i) {
    uint32_t a = wrap(i + h);
    if (!g.has_edge(i, a)) g.add_edge(i, a);
  }
  return g;
}

Graph cycle_graph(uint32_t n) {
  if (n < 3) throw GraphError("cycle needs n >= 3, got " + std::to_string(n));
  Graph g(n);
  for (uint32_t i = 1; i < n; ++i) g.add_edge(i, i + 1);
  g.add_edge(n, 1);
  return g;
}

Graph random_graph(uint32_t n, std::mt19937_64& rng, double edge_prob) {
  if (edge_prob < 0.0 || edge_prob > 1.0)
    throw GraphError("edge probability must lie in [0, 1]");
  // Threshold in the raw 64-bit space keeps the draw reproducible across
  // standard libraries.
  const double scaled = std::ldexp(edge_prob, 64);
  const uint64_t threshold =
      scaled >= std::ldexp(1.0, 64) ? ~uint64_t{0} : static_cast<uint64_t>(scaled);
  Graph g(n);
  for (uint32_t u = 1; u <= n; ++u)
    for (uint32_t v = u + 1; v <= n; ++v)
      if (rng() < threshold) g.add_edge(u, v);
  return g;
}

PauliString graph_generator(const Graph& g, uint32_t site) {
  const uint32_t n = g.num_sites();
  if (site < 1 || site > n) throw GraphError("site out of range");
  PauliString p = PauliString::identity(n);
  p.x.set(site - 1, true);
  p.z = g.neighbors(site);
  if (p.z.get(site - 1))
    throw std::logic_error("adjacency row touches its own site");
  return p;
}

StabilizerTableau graph_to_stabilizer(const Graph& g) {
  std::vector<PauliString> gens;
  gens.reserve(g.num_sites());
  for (uint32_t i = 1; i <= g.num_sites(); ++i)
    gens.push_back(graph_generator(g, i));
  return StabilizerTableau::from_generators(g.num_sites(), gens);
}

std::string graph_to_file_text(const Graph& g) {
  std::string out = "N=" + std::to_string(g.num_sites()) + "\n";
  for (const auto& [u, v] : g.edges())
    out += std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

Graph graph_from_file_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  size_t line_no = 0;
  auto next_payload = [&](std::string& out) {
    while (std::getline(in, line)) {
      ++line_no;
      size_t a = line.find_first_not_of(" \t\r");
      if (a == std::string::npos) continue;
      size_t b = line.find_last_not_of(" \t\r");
      out = line.substr(a, b - a + 1);
      if (out.empty() || out[0] == '#') continue;
      return true;
    }
    return false;
  };
  std::string payload;
  if (!next_payload(payload) || payload.rfind("N=", 0) != 0)
    throw GraphParseError("expected 'N=<sites>' header", line_no);
  uint32_t n = 0;
  try {
    n = static_cast<uint32_t>(std::stoul(payload.substr(2)));
  } catch (const std::exception&) {
    throw GraphParseError("bad site count in header", line_no);
  }
  Graph g(n);
  while (next_payload(payload)) {
    std::istringstream ls(payload);
    uint32_t u = 0, v = 0;
    std::string extra;
    if (!(ls >> u >> v) || (ls >> extra))
      throw GraphParseError("expected 'u v' edge line", line_no);
    try {
      g.add_edge(u, v);
    } catch (const GraphError& e) {
      throw GraphParseError(e.what(), line_no);
    }
  }
  return g;
}

std::string graph_to_dot(const Graph& g, const std::string& name) {
  std::string out = "graph " + name + " {\n";
  for (uint32_t i = 1; i <= g.num_sites(); ++i)
    out += "  " + std::to_string(i) + ";\n";
  for (const auto& [u, v] : g.edges())
    out += "  " + std::to_string(u) + " -- " + std::to_string(v) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace stabtherm
