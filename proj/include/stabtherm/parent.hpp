#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stabtherm/hamiltonian.hpp"
#include "stabtherm/pauli.hpp"
#include "stabtherm/rational.hpp"
#include "stabtherm/tableau.hpp"

namespace stabtherm {

/* One way of writing a signed group element g as a phase times a product of
   two bounded-weight strings: i^a_exp * p * q == g, with p, q sign-free and
   not the identity. */
struct Factorization {
  PauliString g;
  PauliString p;
  PauliString q;
  int a_exp = 0;

  bool operator==(const Factorization&) const = default;
};

/* All factorizations of group elements into p, q of support weight <= m.
   Every element supported on at most 2m sites is factored; the list is
   sorted by (g, p, q) and globally duplicate-free. */
std::vector<Factorization> enumerate_factorizations(const StabilizerTableau& t,
                                                    uint32_t m);

/* Orbit of the cyclic shift acting on factorizations, for circulant groups:
   indices into the input list whose (p, q) pairs map into each other under
   translation.  Orbits are keyed by their least member pair and listed in
   that order. */
struct TranslationOrbit {
  std::vector<size_t> members;
};
std::vector<TranslationOrbit> translation_orbits(
    const std::vector<Factorization>& fs, const StabilizerTableau& t);

struct NonHermitianResultError : std::runtime_error {
  explicit NonHermitianResultError(std::vector<std::string> bad)
      : std::runtime_error("assembled operator has complex coefficients on: " +
                           join(bad)),
        offenders(std::move(bad)) {}
  std::vector<std::string> offenders;

 private:
  static std::string join(const std::vector<std::string>& v);
};

/* H = sum_j c_j (p_j - i^{a_j} q_j) from weighted factorizations.  The
   result annihilates the stabilizer state by construction; it must come out
   Hermitian and traceless or NonHermitianResultError is thrown. */
PauliHamiltonian assemble(
    uint32_t n, const std::vector<std::pair<Factorization, CRat>>& weighted);

/* Exact check that the state is a zero-energy eigenstate: both the mean of H
   and the mean of H^2 vanish in rational arithmetic. */
struct ZeroEigenstateCheck {
  bool zero_energy = false;
  Rat h_mean{0};
  Rat h2_mean{0};
};
ZeroEigenstateCheck verify_zero_eigenstate(const PauliHamiltonian& h,
                                           const StabilizerTableau& t);

struct NotAnnihilatingError : std::runtime_error {
  explicit NotAnnihilatingError(const std::string& member)
      : std::runtime_error("coefficient balance fails on the class of " +
                           member),
        class_member(member) {}
  std::string class_member;
};

/* Terms of H grouped by the equivalence p ~ q iff p*q lands in the group up
   to phase.  Holds everything needed to rebuild the coefficients. */
struct DecompositionClass {
  PauliString representative;        // canonical coset label
  uint64_t class_size = 0;           // number of equivalent strings in total
  std::vector<PauliString> members;  // terms of H in this class, ascending
  std::vector<Rat> h;                // their coefficients
  // a_exp[i][j]: phase exponent with i^{a_exp[i][j]} * members[i] * members[j]
  // in the group (including its sign).
  std::vector<std::vector<int>> a_exp;
  // c[i][j] = -(1/class_size) * i^{a_exp[j][i]} * h[j]
  std::vector<std::vector<CRat>> c;
};

struct DecompositionCertificate {
  uint32_t n = 0;
  std::vector<DecompositionClass> classes;
};

/* Splits an annihilating H into difference pairs, verifying the class-wise
   coefficient balance; throws NotAnnihilatingError when H does not kill the
   state.  Restricted to n <= 62 so class sizes fit an integer. */
DecompositionCertificate decompose(const PauliHamiltonian& h,
                                   const StabilizerTableau& t);

/* Rebuilds every coefficient from the certificate tables alone; equals the
   input Hamiltonian exactly whenever the certificate is consistent. */
PauliHamiltonian reconstruct(const DecompositionCertificate& cert);

/* Exhaustive audit of which group elements admit m-body difference pairs.
   Any element g = i^a p q with |p|,|q| <= m has support at most 2m, so the
   support-weight spectrum up to 2m+1 plus the full factorization list
   settles whether an m-body annihilating pair exists at all. */
struct NoGoAuditReport {
  uint32_t n = 0;
  uint32_t m = 0;
  std::optional<uint32_t> min_support_weight;  // within the scanned bound
  uint32_t scan_bound = 0;                     // weights scanned: 1..scan_bound
  uint32_t protected_subsystem_size = 0;       // min weight - 1 when known
  size_t factorization_count = 0;
  uint32_t widest_factored_weight = 0;  // largest |supp g| over factorizations
  std::optional<Factorization> widest_example;
  bool support_union_bound_ok = true;  // |supp g| <= |supp p| + |supp q|
  bool support_half_bound_ok = true;   // max(|p|,|q|) >= ceil(|supp g|/2)
};
NoGoAuditReport no_go_audit(const StabilizerTableau& t, uint32_t m);

}  // namespace stabtherm
