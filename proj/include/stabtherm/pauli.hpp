#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stabtherm/bits.hpp"

namespace stabtherm {

/**
 * A phased Pauli operator on n spin-1/2 sites in binary-symplectic form:
 *
 *     i^phase_exp * prod_j X_j^{x[j]} * prod_j Z_j^{z[j]}
 *
 * Y is represented as x = z = 1 on the site; the per-site identity
 * Y = i*X*Z is absorbed into phase_exp.  phase_exp lives in Z_4.  The
 * operator is Hermitian iff phase_exp and the number of Y sites have
 * equal parity; Hermitian strings square to the identity exactly.
 *
 * Sites are 1-based in all public interfaces (site i maps to bit i-1).
 */
struct PauliString {
  uint32_t n = 0;
  BitVec x, z;
  uint8_t phase_exp = 0;  // exponent of i, mod 4

  PauliString() = default;
  explicit PauliString(uint32_t n_) : n(n_), x(n_), z(n_) {}

  static PauliString identity(uint32_t n) { return PauliString(n); }

  /**
   * Build from 1-based (site, letter) pairs, letters in {X, Y, Z}, plus
   * an overall prefactor i^prefix_exp applied to the letter product.
   * Repeated sites are rejected.
   */
  static PauliString from_letters(
      uint32_t n, const std::vector<std::pair<uint32_t, char>>& ops,
      int prefix_exp = 0);

  uint32_t num_y() const { return x.and_popcount(z); }
  bool is_identity() const { return x.none() && z.none() && phase_exp == 0; }

  /// Hermitian iff the letter-form prefactor is a sign (+1 or -1).
  bool hermitian() const { return ((phase_exp ^ num_y()) & 1) == 0; }

  /// Prefactor exponent e with operator == i^e * (letter product), e in Z_4.
  int prefix_exp() const { return (int(phase_exp) - int(num_y() % 4) + 8) % 4; }

  /// +1 or -1 for Hermitian strings; throws std::logic_error otherwise.
  int sign() const;

  /// Same operator content with the prefactor dropped (prefix forced to +1).
  PauliString prefactor_one() const {
    PauliString p = *this;
    p.phase_exp = uint8_t(num_y() % 4);
    return p;
  }

  uint32_t weight() const { return (x | z).popcount(); }
  BitVec support() const { return x | z; }
  std::vector<uint32_t> support_sites() const;  // 1-based, ascending

  char letter_at(uint32_t site) const {  // 1-based; 'I' when absent
    bool xv = x.get(site - 1), zv = z.get(site - 1);
    return xv ? (zv ? 'Y' : 'X') : (zv ? 'Z' : 'I');
  }

  /// Cyclic shift of every site by `shift` (site i -> i + shift mod n).
  PauliString translated(uint32_t shift) const;

  /// Reflection i -> n + 1 - i.
  PauliString reflected() const;

  /// Render as sign/phase prefix plus letter-site tokens: "+X1 Z5 Z6 Z7".
  std::string str() const;

  friend bool operator==(const PauliString& a, const PauliString& b) = default;
  friend std::strong_ordering operator<=>(const PauliString& a,
                                          const PauliString& b) {
    if (auto c = a.x <=> b.x; c != 0) return c;
    if (auto c = a.z <=> b.z; c != 0) return c;
    return a.phase_exp <=> b.phase_exp;
  }
};

/// Exact operator product, including the i^k bookkeeping.
PauliString multiply(const PauliString& p, const PauliString& q);

/// Binary symplectic form: true iff p and q commute as operators.
bool commutes(const PauliString& p, const PauliString& q);

/**
 * Parse the textual form produced by PauliString::str(): an optional
 * prefix from {+, -, +i, -i} followed by whitespace-separated
 * letter+site tokens ("X1", "Z12"), or "I" for the identity.  Sites are
 * 1-based and must lie in [1, n].  Throws std::invalid_argument with a
 * description of the offending token.
 */
PauliString parse_pauli(uint32_t n, const std::string& text);

/// Site mask from a 1-based site list (duplicates rejected).
BitVec sites_mask(uint32_t n, const std::vector<uint32_t>& sites);

/// 1-based ascending site list of a mask.
std::vector<uint32_t> mask_sites(const BitVec& mask);

}  // namespace stabtherm
