#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "stabtherm/pauli.hpp"

namespace stabtherm {

struct TableauError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A generator is not Hermitian (letter-form prefactor is +/-i).
struct NonHermitianGeneratorError : TableauError {
  size_t index;
  explicit NonHermitianGeneratorError(size_t i)
      : TableauError("generator " + std::to_string(i) + " is not Hermitian"),
        index(i) {}
};

/// Two generators anticommute.
struct NonCommutingError : TableauError {
  size_t first, second;
  NonCommutingError(size_t i, size_t j)
      : TableauError("generators " + std::to_string(i) + " and " +
                     std::to_string(j) + " anticommute"),
        first(i), second(j) {}
};

/// A generator is a product of the others (with sign +1).
struct DependentGeneratorError : TableauError {
  size_t index;
  explicit DependentGeneratorError(size_t i)
      : TableauError("generator " + std::to_string(i) +
                     " is dependent on the others"),
        index(i) {}
};

/// The generating set multiplies to -identity: not a valid state group.
struct MinusIdentityError : TableauError {
  MinusIdentityError() : TableauError("generators produce -identity") {}
};

struct TableauParseError : TableauError {
  size_t line;
  TableauParseError(size_t line_, const std::string& what)
      : TableauError("line " + std::to_string(line_) + ": " + what),
        line(line_) {}
};

/**
 * Membership certificate: the product of the canonical generators at the
 * set coefficient positions equals sign * query.  A +1 sign means the
 * query itself is a group element; -1 means its negation is.
 */
struct GroupElementWitness {
  std::vector<uint8_t> coefficients;  // one flag per canonical generator
  int sign;                           // +1 or -1
};

/**
 * Maximal stabilizer group on n sites: n independent, pairwise commuting
 * Hermitian Pauli strings whose span avoids -identity.  Stored rows are
 * the unique reduced-row-echelon basis over GF(2) with the X columns
 * ordered before the Z columns, so equal groups compare equal row by
 * row and every derived scan is deterministic.
 */
class StabilizerTableau {
 public:
  /// Validates and canonicalizes; throws the typed errors above.
  static StabilizerTableau from_generators(uint32_t n,
                                           const std::vector<PauliString>& gens);

  uint32_t num_sites() const { return n_; }
  const std::vector<PauliString>& generators() const { return rows_; }

  /**
   * Decide whether +/-query lies in the group.  The query must be
   * Hermitian.  Returns the generator combination and the sign s with
   * product == s * query, or nullopt when the symplectic part of the
   * query is outside the row space.
   */
  std::optional<GroupElementWitness> membership(const PauliString& query) const;

  /// <psi| query |psi> for the stabilized state: +1, -1, or 0.
  int expectation(const PauliString& query) const;

  /**
   * Independent generators of the subgroup of elements supported inside
   * `region` (a site mask), computed as the GF(2) kernel of the
   * generator matrix restricted to the columns outside the region.
   * Elements carry their true signs.  Deterministically ordered with
   * X-type elements first (sorted by Z bits, then X bits).
   */
  std::vector<PauliString> subgroup_supported_in(const BitVec& region) const;

  /// True iff some non-identity element is supported inside `region`.
  bool has_element_supported_in(const BitVec& region) const;

  /**
   * Minimum weight delta(G) over non-identity elements, scanning support
   * subsets of growing size; nullopt if delta(G) > bound.  Cost grows as
   * sum_w C(n, w), so keep the bound small at large n.
   */
  std::optional<uint32_t> min_weight(uint32_t bound) const;

  /// True iff the signed group is invariant under the cyclic site shift.
  bool is_circulant() const;

  /**
   * Canonical coset representative: the query's symplectic part reduced
   * against the rows, returned as a prefactor-one string.  Two
   * prefactor-one strings P, Q satisfy a*P*Q in G for some scalar a iff
   * their representatives coincide.
   */
  PauliString reduce_prefactor_one(const PauliString& query) const;

  /// "N=<n>" header plus one canonical generator per line.
  std::string to_file_text() const;

  /// Inverse of to_file_text; throws TableauParseError / validation errors.
  static StabilizerTableau from_file_text(const std::string& text);

  friend bool operator==(const StabilizerTableau& a,
                         const StabilizerTableau& b) = default;

 private:
  StabilizerTableau() = default;
  uint32_t n_ = 0;
  std::vector<PauliString> rows_;    // RREF order
  std::vector<uint32_t> pivot_col_;  // pivot column of each row (x cols first)
};

/**
 * Random maximal group: conjugates {Z_1, ..., Z_n} by a random circuit of
 * H, S, CNOT, CZ gates (defaulting to 4n of them) and random generator
 * sign flips.  Depends only on the generator stream, so runs reproduce.
 */
StabilizerTableau random_stabilizer_tableau(uint32_t n, std::mt19937_64& rng,
                                            uint32_t gates = 0);

}  // namespace stabtherm
