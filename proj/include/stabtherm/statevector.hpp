#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "stabtherm/bits.hpp"
#include "stabtherm/graph.hpp"
#include "stabtherm/pauli.hpp"
#include "stabtherm/tableau.hpp"

namespace stabtherm {

struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/* Dense state over n sites; basis index b has bit j-1 equal to the value of
   site j, so |b=0> = |0...0> and amplitude order follows the integer index. */
using Amplitudes = std::vector<std::complex<double>>;

/* Graph state amplitudes: uniform magnitude 2^{-n/2}, sign (-1)^{#edges
   inside the excited set}.  Throws ResourceLimitError above max_sites. */
Amplitudes graph_statevector(const Graph& g, uint32_t max_sites = 20);

/* Unique joint +1 eigenvector of the tableau, built by running the group
   average (1/2^n) sum_g g over basis states until one survives. */
Amplitudes tableau_statevector(const StabilizerTableau& t, uint32_t max_sites = 20);

Amplitudes apply_pauli(const PauliString& p, const Amplitudes& v);

std::complex<double> inner(const Amplitudes& a, const Amplitudes& b);

std::complex<double> pauli_expectation(const PauliString& p, const Amplitudes& v);

/* Reduced density matrix on the given site set, row-major d x d with
   d = 2^|region|; row/column bit p corresponds to the p-th smallest site
   in the region. */
std::vector<std::complex<double>> reduced_density_matrix(const Amplitudes& v,
                                                         uint32_t n,
                                                         const BitVec& region);

/* Distance from rho to the maximally mixed state 1/d.  For d <= 32 this is
   the exact trace norm sum_i |lambda_i - 1/d|.  For larger d it returns the
   Frobenius norm of rho - 1/d, a lower bound on the trace norm that is zero
   exactly when rho is maximally mixed (stabilizer-state marginals have
   dyadic entries, so the comparison is exact in floating point). */
double max_mixed_distance(const std::vector<std::complex<double>>& rho, uint32_t d);

}  // namespace stabtherm
