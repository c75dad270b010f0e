#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include "stabtherm/pauli.hpp"
#include "stabtherm/rational.hpp"

namespace stabtherm {

struct HamiltonianError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct HamiltonianParseError : HamiltonianError {
  explicit HamiltonianParseError(const std::string& what, size_t line)
      : HamiltonianError(what + " (line " + std::to_string(line) + ")"),
        line(line) {}
  size_t line;
};

/* Traceless Hermitian operator sum_P h(P) P over Hermitian Pauli strings,
   with exact rational coefficients.  Keys are stored sign-free (the sign of
   an added string folds into its coefficient); zero coefficients vanish. */
class PauliHamiltonian {
 public:
  explicit PauliHamiltonian(uint32_t n);

  uint32_t num_sites() const { return n_; }
  size_t num_terms() const { return terms_.size(); }
  const std::map<PauliString, Rat>& terms() const { return terms_; }

  // Adds c * p; p must be Hermitian and not the identity.
  void add(const PauliString& p, const Rat& c);
  void add(const PauliHamiltonian& other, const Rat& scale = Rat(1));

  Rat coefficient(const PauliString& p) const;

  // Largest support size over terms; 0 for the zero operator.
  uint32_t locality() const;

  PauliHamiltonian translated(uint32_t shift) const;
  PauliHamiltonian reflected() const;

  bool operator==(const PauliHamiltonian&) const = default;

  /* Text format: "N=<n>" header, then one "<coefficient>\t<string>" line per
     term.  Coefficients are integers, p/q fractions, or plain decimals that
     convert exactly. */
  std::string to_file_text() const;
  static PauliHamiltonian from_file_text(const std::string& text);

 private:
  uint32_t n_ = 0;
  std::map<PauliString, Rat> terms_;
};

}  // namespace stabtherm
