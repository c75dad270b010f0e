#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stabtherm/bits.hpp"
#include "stabtherm/graph.hpp"
#include "stabtherm/tableau.hpp"

namespace stabtherm {

struct SubsetLimitError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/* A region where the reduced state fails to be maximally mixed, certified by
   a nontrivial group element supported inside it. */
struct MiteWitness {
  std::vector<uint32_t> subsystem;  // ascending sites
  PauliString element;             // signed group element, support inside subsystem
};

struct MiteVerdict {
  bool holds = false;
  std::optional<MiteWitness> witness;  // present exactly when !holds
  /* Regions confirmed maximally mixed: all of them when the property holds,
     otherwise the number preceding the first failure in scan order.  This
     count is the same whatever the thread count. */
  uint64_t regions_checked = 0;
};

/* The reduced state on `region` is maximally mixed iff no nonidentity group
   element is supported inside it.  The witness element reported on failure is
   the first basis element of the supported subgroup in canonical order. */
MiteVerdict is_mite_on(const StabilizerTableau& t, const BitVec& region);

/* Every subsystem of at most k sites is maximally mixed.  Scans k-subsets in
   colexicographic order; on failure reports the first failing subset in that
   order.  Deterministic for any thread count. */
MiteVerdict k_body_mite(const StabilizerTableau& t, uint32_t k,
                        unsigned threads = 1);

/* Every set of l cyclically contiguous sites is maximally mixed; windows are
   checked in order of their starting site. */
MiteVerdict l_local_mite(const StabilizerTableau& t, uint32_t l);

/* Combinatorial test for graph states: the region A is maximally mixed iff
   every nonempty B inside A has an outside vertex with an odd number of
   neighbors in B.  Exponential in |A|; regions above 24 sites are refused. */
bool graph_mite_criterion(const Graph& g, const BitVec& region);

/* Largest k such that every k-site reduced state is maximally mixed:
   one less than the minimum support weight over nonidentity group elements. */
uint32_t max_uniformity(const StabilizerTableau& t);

}  // namespace stabtherm
