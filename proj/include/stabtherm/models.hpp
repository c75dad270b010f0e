#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stabtherm/graph.hpp"
#include "stabtherm/hamiltonian.hpp"
#include "stabtherm/rational.hpp"
#include "stabtherm/tableau.hpp"

namespace stabtherm {

/* An executable statement about a bundle: a named property with a
   parameter, the expected outcome, and (optionally) the exact witness the
   failure must produce. */
struct ModelClaim {
  enum class Property {
    kZeroEnergy,      // bundled Hamiltonian annihilates the state exactly
    kKBodyMixed,      // every k-site subsystem maximally mixed
    kLLocalMixed,     // every l-window maximally mixed
    kSubsystemMixed,  // one concrete subsystem maximally mixed
  };
  Property property;
  uint32_t parameter = 0;        // k or l; unused for the others
  std::vector<uint32_t> sites;   // subsystem claim only
  bool expected = true;
  std::optional<std::string> expected_witness;  // exact element rendering
  std::string label;             // short human-readable description
};

struct ModelBundle {
  std::string name;
  uint32_t n = 0;
  StabilizerTableau tableau;
  std::optional<Graph> graph;
  std::optional<PauliHamiltonian> hamiltonian;
  std::vector<ModelClaim> claims;
};

/* Paired sites i and i + n/2 share a Bell pair: generators X_i X_{i+n/2}
   and Z_i Z_{i+n/2}.  Even n >= 4. */
ModelBundle eap_model(uint32_t n);

/* Ladder-family graph state (even n >= 8) with its three-local parent
   J * sum_i (Z_i Z_{i+3} - X_i X_{i+1}). */
ModelBundle g1_model(uint32_t n, const Rat& j = Rat(1));

/* Circulant-family graph state (odd n >= 5) with the two-local parent
   sum_i [ j1 (Z_i Z_{i+2} - X_i X_{i+1}) + j2 (Z_i Z_{i+1} - X_i)
         + j3 (Y_i Z_{i+1} - Z_i Y_{i+1}) ]. */
ModelBundle g2_model(uint32_t n, const Rat& j1 = Rat(1),
                     const Rat& j2 = Rat(1), const Rat& j3 = Rat(1));

/* Cycle-graph cluster state, n >= 3; no bundled parent. */
ModelBundle cluster_1d_model(uint32_t n);

struct ClaimResult {
  ModelClaim claim;
  bool passed = false;
  std::string detail;  // what was measured, for reports
};

std::vector<ClaimResult> run_claims(const ModelBundle& bundle,
                                    unsigned threads = 1);

}  // namespace stabtherm
