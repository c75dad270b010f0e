#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "stabtherm/graph.hpp"
#include "stabtherm/mite.hpp"
#include "stabtherm/models.hpp"
#include "stabtherm/pauli.hpp"
#include "stabtherm/statevector.hpp"
#include "stabtherm/tableau.hpp"

using stabtherm::BitVec;
using stabtherm::StabilizerTableau;
using stabtherm::sites_mask;

TEST_CASE("paired-site state: singles mixed, the partner pair is not") {
  const auto t = stabtherm::eap_model(8).tableau;

  const auto ones = stabtherm::k_body_mite(t, 1);
  CHECK(ones.holds);
  CHECK(ones.regions_checked == 8);

  const auto pairs = stabtherm::k_body_mite(t, 2);
  REQUIRE(!pairs.holds);
  CHECK(pairs.witness->subsystem == std::vector<uint32_t>{1, 5});
  CHECK(pairs.witness->element.str() == "+X1 X5");
  // {1,2},{1,3},{2,3},{1,4},{2,4},{3,4} precede the failure colexically.
  CHECK(pairs.regions_checked == 6);
  CHECK(stabtherm::max_uniformity(t) == 1);
}

TEST_CASE("ladder-family state: three-site regions mixed, a four-site one not") {
  const auto t = stabtherm::g1_model(8).tableau;

  const auto threes = stabtherm::k_body_mite(t, 3);
  CHECK(threes.holds);
  CHECK(threes.regions_checked == 56);

  const auto fours = stabtherm::k_body_mite(t, 4);
  REQUIRE(!fours.holds);
  CHECK(fours.witness->subsystem == std::vector<uint32_t>{1, 2, 3, 5});
  CHECK(fours.witness->element.str() == "+Z1 Y2 X3 Y5");
  CHECK(t.expectation(fours.witness->element) == 1);
  CHECK(stabtherm::max_uniformity(t) == 3);
}

TEST_CASE("circulant-family state: pairs mixed, one generator support not") {
  const auto t = stabtherm::g2_model(9).tableau;
  CHECK(stabtherm::k_body_mite(t, 2).holds);

  const auto triples = stabtherm::k_body_mite(t, 3);
  REQUIRE(!triples.holds);
  CHECK(triples.witness->subsystem == std::vector<uint32_t>{1, 2, 6});
  CHECK(triples.witness->element.str() == "+Z1 Z2 X6");
  CHECK(t.expectation(triples.witness->element) == 1);
  CHECK(stabtherm::max_uniformity(t) == 2);
}

TEST_CASE("cycle cluster state: windows of two mixed, windows of three not") {
  const auto t = stabtherm::cluster_1d_model(5).tableau;
  const auto two = stabtherm::l_local_mite(t, 2);
  CHECK(two.holds);
  CHECK(two.regions_checked == 5);

  const auto three = stabtherm::l_local_mite(t, 3);
  REQUIRE(!three.holds);
  CHECK(three.witness->subsystem == std::vector<uint32_t>{1, 2, 3});
  CHECK(three.witness->element.str() == "+Z1 X2 Z3");
  CHECK(three.regions_checked == 0);  // the very first window fails
}

TEST_CASE("half-window behavior differs across ladder sizes") {
  CHECK(stabtherm::l_local_mite(stabtherm::g1_model(8).tableau, 4).holds);
  const auto ten = stabtherm::l_local_mite(stabtherm::g1_model(10).tableau, 5);
  REQUIRE(!ten.holds);
  CHECK(ten.witness->subsystem == std::vector<uint32_t>{1, 2, 3, 4, 5});
  CHECK(ten.witness->element.str() == "+Y1 X2 X4 Y5");
  CHECK(stabtherm::l_local_mite(stabtherm::g1_model(12).tableau, 6).holds);
}

TEST_CASE("single-region verdicts match the dense reduced-density oracle") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 15; ++trial) {
    const uint32_t n = 4 + uint32_t(rng() % 3);  // 4..6
    const auto g = stabtherm::random_graph(n, rng);
    const auto t = stabtherm::graph_to_stabilizer(g);
    const auto psi = oracle::dense_statevector(t);
    // All regions of one to four sites.
    for (uint64_t mask = 1; mask < (uint64_t(1) << n); ++mask) {
      if (std::popcount(mask) > 4) continue;
      std::vector<uint32_t> sites;
      for (uint32_t b = 0; b < n; ++b)
        if (mask >> b & 1) sites.push_back(b + 1);
      const auto region = sites_mask(n, sites);
      const auto verdict = stabtherm::is_mite_on(t, region);
      const double dist =
          oracle::mixedness_distance(oracle::reduced_density(psi, n, sites));
      CHECK(verdict.holds == (dist < 1e-9));
      CHECK(verdict.holds == stabtherm::graph_mite_criterion(g, region));
      if (!verdict.holds) {
        CHECK(verdict.witness->element.support().subset_of(region));
        CHECK(t.expectation(verdict.witness->element) == 1);
      }
    }
  }
}

TEST_CASE("subset scans are reproducible whatever the thread count") {
  const auto t = stabtherm::g1_model(10).tableau;
  const auto a = stabtherm::k_body_mite(t, 4, 1);
  const auto b = stabtherm::k_body_mite(t, 4, 4);
  REQUIRE(!a.holds);
  REQUIRE(!b.holds);
  CHECK(a.witness->subsystem == b.witness->subsystem);
  CHECK(a.witness->element == b.witness->element);
  CHECK(a.regions_checked == b.regions_checked);

  const auto c = stabtherm::k_body_mite(t, 3, 1);
  const auto d = stabtherm::k_body_mite(t, 3, 7);
  CHECK(c.holds == d.holds);
  CHECK(c.regions_checked == d.regions_checked);
}

TEST_CASE("scan parameter validation") {
  const auto t = stabtherm::cluster_1d_model(5).tableau;
  CHECK_THROWS_AS(stabtherm::k_body_mite(t, 0), std::invalid_argument);
  CHECK_THROWS_AS(stabtherm::k_body_mite(t, 6), std::invalid_argument);
  CHECK_THROWS_AS(stabtherm::l_local_mite(t, 0), std::invalid_argument);
  CHECK_THROWS_AS(stabtherm::l_local_mite(t, 6), std::invalid_argument);
  CHECK_THROWS_AS(sites_mask(5, {1, 6}), std::invalid_argument);

  // The combinatorial graph test refuses oversized regions.
  const auto big = stabtherm::cycle_graph(26);
  std::vector<uint32_t> sites;
  for (uint32_t i = 1; i <= 25; ++i) sites.push_back(i);
  CHECK_THROWS_AS(stabtherm::graph_mite_criterion(big, sites_mask(26, sites)),
                  stabtherm::SubsetLimitError);
}
