#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "stabtherm/graph.hpp"
#include "stabtherm/pauli.hpp"
#include "stabtherm/statevector.hpp"
#include "stabtherm/tableau.hpp"

using stabtherm::PauliString;
using stabtherm::StabilizerTableau;
using stabtherm::parse_pauli;

namespace {

/* Every signed element of the group, by brute-force products over all
   generator subsets.  The identity is included. */
std::vector<PauliString> all_elements(const StabilizerTableau& t) {
  const uint32_t n = t.num_sites();
  std::vector<PauliString> out;
  for (uint64_t mask = 0; mask < (uint64_t(1) << n); ++mask) {
    PauliString g = PauliString::identity(n);
    for (uint32_t i = 0; i < n; ++i)
      if (mask >> i & 1) g = multiply(g, t.generators()[i]);
    out.push_back(g);
  }
  return out;
}

}  // namespace

TEST_CASE("generator validation rejects each malformed set") {
  using namespace stabtherm;
  const auto gen = [](uint32_t n, std::vector<std::string> texts) {
    std::vector<PauliString> gens;
    for (const auto& s : texts) gens.push_back(parse_pauli(n, s));
    return StabilizerTableau::from_generators(n, gens);
  };
  CHECK_THROWS_AS(gen(2, {"+X1", "+Z1 X2"}), NonCommutingError);
  CHECK_THROWS_AS(gen(2, {"+X1 X2", "-X1 X2"}), MinusIdentityError);
  CHECK_THROWS_AS(gen(2, {"+X1 X2", "+Y1 Y2", "+Z1 Z2"}), TableauError);
  CHECK_THROWS_AS(gen(2, {"+X1 X2"}), TableauError);  // too few rows
  CHECK_THROWS_AS(gen(2, {"+Z1", "+I"}), TableauError);
  std::vector<PauliString> bad = {parse_pauli(1, "-iY1")};
  bad[0].phase_exp = 0;  // force a letter prefactor of -i
  CHECK_THROWS_AS(StabilizerTableau::from_generators(1, bad),
                  NonHermitianGeneratorError);
  // A sign-consistent redundant list is dependent, not minus-identity.
  CHECK_THROWS_AS(gen(2, {"+X1 X2", "+X1 X2"}), DependentGeneratorError);
}

TEST_CASE("Bell pair group: membership, signs, expectations") {
  const auto t = StabilizerTableau::from_generators(
      2, {parse_pauli(2, "+X1 X2"), parse_pauli(2, "+Z1 Z2")});
  CHECK(t.expectation(parse_pauli(2, "+X1 X2")) == 1);
  CHECK(t.expectation(parse_pauli(2, "+Y1 Y2")) == -1);
  CHECK(t.expectation(parse_pauli(2, "-Y1 Y2")) == 1);
  CHECK(t.expectation(parse_pauli(2, "+X1 Z2")) == 0);
  CHECK(t.expectation(parse_pauli(2, "+X1")) == 0);

  const auto w = t.membership(parse_pauli(2, "+Y1 Y2"));
  REQUIRE(w.has_value());
  CHECK(w->sign == -1);
  CHECK(!t.membership(parse_pauli(2, "+X1")).has_value());

  // Membership demands a Hermitian query.
  CHECK_THROWS_AS(t.membership(parse_pauli(2, "+iX1 Z2")),
                  std::invalid_argument);
}

TEST_CASE("canonical form is stable under regeneration and file round-trip") {
  std::mt19937_64 rng(417);
  for (int trial = 0; trial < 40; ++trial) {
    const uint32_t n = 2 + uint32_t(rng() % 5);
    const auto t = stabtherm::random_stabilizer_tableau(n, rng);
    CHECK(StabilizerTableau::from_generators(n, t.generators()) == t);
    CHECK(StabilizerTableau::from_file_text(t.to_file_text()) == t);
    // Shuffled generators and random pair-products span the same group.
    auto gens = t.generators();
    std::shuffle(gens.begin(), gens.end(), rng);
    gens[0] = multiply(gens[0], gens[1]);
    CHECK(StabilizerTableau::from_generators(n, gens) == t);
  }
}

TEST_CASE("tableau file parser flags each malformed input") {
  using stabtherm::TableauParseError;
  const auto parse = [](const std::string& s) {
    return StabilizerTableau::from_file_text(s);
  };
  CHECK_THROWS_AS(parse("N=x\n+Z1\n"), TableauParseError);
  CHECK_THROWS_AS(parse("+Z1\n"), TableauParseError);  // missing header
  CHECK_THROWS_AS(parse("N=2\n+Z1\n+W2\n"), TableauParseError);
  CHECK_THROWS_AS(parse("N=1\n+Z2\n"), TableauParseError);
  // Comments and blank lines are tolerated.
  const auto t = parse("# bell\nN=2\n\n+X1 X2\n+Z1 Z2\n");
  CHECK(t.num_sites() == 2);
}

TEST_CASE("statevector, expectations, and projector agree with dense algebra") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 25; ++trial) {
    const uint32_t n = 2 + uint32_t(rng() % 4);  // 2..5
    const auto t = stabtherm::random_stabilizer_tableau(n, rng);

    // Library statevector is the +1 eigenvector of every generator.
    const auto amps = stabtherm::tableau_statevector(t);
    oracle::Vec psi(Eigen::Index(amps.size()));
    for (size_t i = 0; i < amps.size(); ++i) psi[Eigen::Index(i)] = amps[i];
    const auto proj = oracle::dense_projector(t);
    CHECK((proj * psi - psi).norm() < 1e-10);
    CHECK(std::abs(psi.norm() - 1.0) < 1e-10);

    // Oracle state built from the projector matches up to global phase.
    const auto ref = oracle::dense_statevector(t);
    CHECK(std::abs(std::abs(ref.dot(psi)) - 1.0) < 1e-10);

    // Integer expectation of random strings equals the dense quadratic form.
    for (int k = 0; k < 20; ++k) {
      PauliString p(n);
      for (uint32_t i = 0; i < n; ++i) {
        p.x.set(i, rng() & 1);
        p.z.set(i, rng() & 1);
      }
      p.phase_exp = uint8_t(p.num_y() % 4);
      if (rng() & 1) p.phase_exp = uint8_t((p.phase_exp + 2) % 4);
      const auto dense = (psi.adjoint() * oracle::dense_pauli(p) * psi)(0, 0);
      CHECK(std::abs(dense - double(t.expectation(p))) < 1e-10);
    }
  }
}

TEST_CASE("supported subgroup matches brute-force group enumeration") {
  std::mt19937_64 rng(1777);
  for (int trial = 0; trial < 30; ++trial) {
    const uint32_t n = 2 + uint32_t(rng() % 5);  // 2..6
    const auto t = stabtherm::random_stabilizer_tableau(n, rng);
    const auto elements = all_elements(t);
    stabtherm::BitVec region(n);
    for (uint32_t i = 0; i < n; ++i) region.set(i, rng() & 1);

    size_t inside = 0;
    std::set<PauliString> inside_set;
    for (const auto& g : elements)
      if (g.support().subset_of(region)) {
        ++inside;
        inside_set.insert(g);
      }

    const auto basis = t.subgroup_supported_in(region);
    CHECK((size_t(1) << basis.size()) == inside);
    CHECK(t.has_element_supported_in(region) == (inside > 1));
    for (const auto& b : basis) {
      CHECK(b.support().subset_of(region));
      CHECK(inside_set.count(b) == 1);  // true sign, not just the pattern
    }
  }
}

TEST_CASE("minimum weight matches brute force") {
  std::mt19937_64 rng(90210);
  for (int trial = 0; trial < 25; ++trial) {
    const uint32_t n = 2 + uint32_t(rng() % 5);
    const auto t = stabtherm::random_stabilizer_tableau(n, rng);
    uint32_t best = n + 1;
    for (const auto& g : all_elements(t))
      if (!g.is_identity() && g.weight() < best) best = g.weight();
    const auto found = t.min_weight(n);
    REQUIRE(found.has_value());
    CHECK(*found == best);
    if (best > 1) CHECK(!t.min_weight(best - 1).has_value());
  }
}

TEST_CASE("coset representatives collapse exactly the group-equivalent pairs") {
  std::mt19937_64 rng(555);
  for (int trial = 0; trial < 10; ++trial) {
    const uint32_t n = 2 + uint32_t(rng() % 3);  // 2..4
    const auto t = stabtherm::random_stabilizer_tableau(n, rng);
    std::set<std::pair<stabtherm::BitVec, stabtherm::BitVec>> patterns;
    for (const auto& g : all_elements(t)) patterns.insert({g.x, g.z});
    for (int k = 0; k < 40; ++k) {
      PauliString p(n), q(n);
      for (uint32_t i = 0; i < n; ++i) {
        p.x.set(i, rng() & 1), p.z.set(i, rng() & 1);
        q.x.set(i, rng() & 1), q.z.set(i, rng() & 1);
      }
      const auto prod = multiply(p, q);
      const bool equivalent = patterns.count({prod.x, prod.z}) > 0;
      CHECK((t.reduce_prefactor_one(p) == t.reduce_prefactor_one(q)) ==
            equivalent);
    }
  }
}

TEST_CASE("circulant recognition") {
  CHECK(stabtherm::graph_to_stabilizer(stabtherm::g1_graph(8)).is_circulant());
  CHECK(stabtherm::graph_to_stabilizer(stabtherm::g2_graph(9)).is_circulant());
  CHECK(
      stabtherm::graph_to_stabilizer(stabtherm::cycle_graph(5)).is_circulant());

  stabtherm::Graph path(3);
  path.add_edge(1, 2);
  path.add_edge(2, 3);
  CHECK(!stabtherm::graph_to_stabilizer(path).is_circulant());

  // All-zeros state: Z_i generators survive any shift.
  std::vector<PauliString> zs;
  for (uint32_t i = 1; i <= 4; ++i)
    zs.push_back(PauliString::from_letters(4, {{i, 'Z'}}));
  CHECK(StabilizerTableau::from_generators(4, zs).is_circulant());
}
