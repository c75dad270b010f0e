#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "stabtherm/hamiltonian.hpp"
#include "stabtherm/pauli.hpp"
#include "stabtherm/tableau.hpp"

/* Independent dense-matrix reference implementations.  Everything here is
   built from explicit Kronecker products and partial traces, with none of
   the symplectic bookkeeping the library uses, so agreement is evidence
   rather than tautology.  Site 1 is the least significant basis-index bit,
   matching the library's amplitude ordering. */
namespace oracle {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/* 2^n x 2^n matrix of a phased string: i^phase_exp * prod X^x * prod Z^z. */
Mat dense_pauli(const stabtherm::PauliString& p);

Mat dense_hamiltonian(const stabtherm::PauliHamiltonian& h);

/* Group average (1/2^n) sum_g g over all signed elements; a rank-one
   projector when the group is maximal. */
Mat dense_projector(const stabtherm::StabilizerTableau& t);

/* Stabilized state: dominant projector column, normalized, first nonzero
   amplitude rotated to the positive real axis. */
Vec dense_statevector(const stabtherm::StabilizerTableau& t);

/* Partial trace of |psi><psi| down to the given 1-based ascending sites;
   row/column bit p corresponds to the p-th smallest listed site. */
Mat reduced_density(const Vec& psi, uint32_t n,
                    const std::vector<uint32_t>& sites);

/* Frobenius distance from the maximally mixed state on rho's dimension. */
double mixedness_distance(const Mat& rho);

}  // namespace oracle
