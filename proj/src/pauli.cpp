#include "stabtherm/pauli.hpp"

#include <cctype>
#include <sstream>

namespace stabtherm {

PauliString PauliString::from_letters(
    uint32_t n, const std::vector<std::pair<uint32_t, char>>& ops,
    int prefix_exp) {
  PauliString p(n);
  uint32_t n_y = 0;
  for (auto [site, letter] : ops) {
    if (site < 1 || site > n)
      throw std::invalid_argument("site " + std::to_string(site) +
                                  " out of range [1, " + std::to_string(n) +
                                  "]");
    uint32_t b = site - 1;
    if (p.x.get(b) || p.z.get(b))
      throw std::invalid_argument("duplicate site " + std::to_string(site));
    switch (letter) {
      case 'X': p.x.set(b, true); break;
      case 'Z': p.z.set(b, true); break;
      case 'Y':
        p.x.set(b, true);
        p.z.set(b, true);
        ++n_y;
        break;
      default:
        throw std::invalid_argument(std::string("unknown Pauli letter '") +
                                    letter + "'");
    }
  }
  p.phase_exp = uint8_t((prefix_exp % 4 + 4 + int(n_y)) % 4);
  return p;
}

int PauliString::sign() const {
  if (!hermitian())
    throw std::logic_error("sign() requires a Hermitian Pauli string: " +
                           str());
  return prefix_exp() == 0 ? 1 : -1;
}

std::vector<uint32_t> PauliString::support_sites() const {
  return mask_sites(support());
}

PauliString PauliString::translated(uint32_t shift) const {
  PauliString p(n);
  p.phase_exp = phase_exp;
  for (uint32_t i = 0; i < n; ++i) {
    uint32_t j = (i + shift) % n;
    if (x.get(i)) p.x.set(j, true);
    if (z.get(i)) p.z.set(j, true);
  }
  return p;
}

PauliString PauliString::reflected() const {
  PauliString p(n);
  p.phase_exp = phase_exp;
  for (uint32_t i = 0; i < n; ++i) {
    uint32_t j = n - 1 - i;
    if (x.get(i)) p.x.set(j, true);
    if (z.get(i)) p.z.set(j, true);
  }
  return p;
}

std::string PauliString::str() const {
  static const char* prefixes[4] = {"+", "+i", "-", "-i"};
  std::string out = prefixes[prefix_exp()];
  bool any = false;
  for (uint32_t i = 0; i < n; ++i) {
    char l = letter_at(i + 1);
    if (l == 'I') continue;
    if (any) out += ' ';
    out += l;
    out += std::to_string(i + 1);
    any = true;
  }
  if (!any) out += "I";
  return out;
}

PauliString multiply(const PauliString& p, const PauliString& q) {
  if (p.n != q.n)
    throw std::invalid_argument("Pauli product on mismatched site counts");
  PauliString r(p.n);
  // Moving each X factor of q through the Z block of p costs a sign:
  // Z^z X^x = (-1)^{z.x} X^x Z^z.
  uint32_t swaps = p.z.and_popcount(q.x);
  r.phase_exp = uint8_t((p.phase_exp + q.phase_exp + 2 * swaps) % 4);
  r.x = p.x;
  r.x.xor_in(q.x);
  r.z = p.z;
  r.z.xor_in(q.z);
  return r;
}

bool commutes(const PauliString& p, const PauliString& q) {
  if (p.n != q.n)
    throw std::invalid_argument("commutator test on mismatched site counts");
  return !(p.x.and_parity(q.z) ^ p.z.and_parity(q.x));
}

PauliString parse_pauli(uint32_t n, const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  if (!(in >> tok)) throw std::invalid_argument("empty Pauli string");

  auto is_letter = [](char c) {
    return c == 'X' || c == 'Y' || c == 'Z' || c == 'I';
  };
  int prefix = 0;
  bool consumed = false;
  if (tok == "+") consumed = true;
  else if (tok == "+i") prefix = 1, consumed = true;
  else if (tok == "-") prefix = 2, consumed = true;
  else if (tok == "-i") prefix = 3, consumed = true;
  else if (tok.size() > 2 && tok.rfind("+i", 0) == 0 && is_letter(tok[2]))
    prefix = 1, tok = tok.substr(2);
  else if (tok.size() > 2 && tok.rfind("-i", 0) == 0 && is_letter(tok[2]))
    prefix = 3, tok = tok.substr(2);
  else if (tok[0] == '+') prefix = 0, tok = tok.substr(1);
  else if (tok[0] == '-') prefix = 2, tok = tok.substr(1);

  std::vector<std::pair<uint32_t, char>> ops;
  bool identity_token = false;
  auto take = [&](const std::string& t) {
    if (t == "I") {
      identity_token = true;
      return;
    }
    if (t.size() < 2 || (t[0] != 'X' && t[0] != 'Y' && t[0] != 'Z'))
      throw std::invalid_argument("bad Pauli token '" + t + "'");
    for (size_t i = 1; i < t.size(); ++i)
      if (!std::isdigit(uint8_t(t[i])))
        throw std::invalid_argument("bad site index in token '" + t + "'");
    ops.emplace_back(uint32_t(std::stoul(t.substr(1))), t[0]);
  };

  if (!consumed && !tok.empty()) take(tok);
  while (in >> tok) take(tok);
  if (identity_token && !ops.empty())
    throw std::invalid_argument("identity token mixed with letter tokens");
  return PauliString::from_letters(n, ops, prefix);
}

BitVec sites_mask(uint32_t n, const std::vector<uint32_t>& sites) {
  BitVec m(n);
  for (uint32_t s : sites) {
    if (s < 1 || s > n)
      throw std::invalid_argument("site " + std::to_string(s) +
                                  " out of range [1, " + std::to_string(n) +
                                  "]");
    if (m.get(s - 1))
      throw std::invalid_argument("duplicate site " + std::to_string(s));
    m.set(s - 1, true);
  }
  return m;
}

std::vector<uint32_t> mask_sites(const BitVec& mask) {
  std::vector<uint32_t> out;
  for (uint32_t i = 0; i < mask.size(); ++i)
    if (mask.get(i)) out.push_back(i + 1);
  return out;
}

}  // namespace stabtherm
