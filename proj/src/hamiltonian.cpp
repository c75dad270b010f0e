#include "stabtherm/hamiltonian.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

namespace stabtherm {

std::string to_string(const Rat& r) {
  std::string out = std::to_string(r.numerator());
  if (r.denominator() != 1) out += "/" + std::to_string(r.denominator());
  return out;
}

std::string to_string(const CRat& c) {
  if (c.is_real()) return to_string(c.re);
  std::string out = "(" + to_string(c.re);
  out += (c.im > 0) ? " + " : " - ";
  Rat mag = c.im > 0 ? c.im : -c.im;
  if (mag != 1) out += to_string(mag) + "*";
  out += "i)";
  return out;
}

Rat parse_rational(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(),
                         [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw std::invalid_argument("empty coefficient");
  auto parse_int = [](const std::string& t) {
    size_t pos = 0;
    int64_t v = std::stoll(t, &pos);
    if (pos != t.size()) throw std::invalid_argument("trailing characters");
    return v;
  };
  try {
    if (size_t slash = s.find('/'); slash != std::string::npos) {
      int64_t num = parse_int(s.substr(0, slash));
      int64_t den = parse_int(s.substr(slash + 1));
      if (den == 0) throw std::invalid_argument("zero denominator");
      return Rat(num, den);
    }
    if (size_t dot = s.find('.'); dot != std::string::npos) {
      std::string frac = s.substr(dot + 1);
      if (frac.empty() ||
          !std::all_of(frac.begin(), frac.end(),
                       [](unsigned char c) { return std::isdigit(c); }))
        throw std::invalid_argument("bad decimal part");
      std::string whole = s.substr(0, dot);
      bool neg = !whole.empty() && whole[0] == '-';
      if (whole == "-" || whole == "+" || whole.empty()) whole += "0";
      int64_t w = parse_int(whole);
      int64_t den = 1;
      for (size_t i = 0; i < frac.size(); ++i) {
        if (den > std::numeric_limits<int64_t>::max() / 10)
          throw std::invalid_argument("decimal too long");
        den *= 10;
      }
      int64_t f = frac.empty() ? 0 : parse_int(frac);
      Rat mag = Rat(w < 0 ? -w : w) + Rat(f, den);
      return (neg || w < 0) ? -mag : mag;
    }
    return Rat(parse_int(s));
  } catch (const std::exception& e) {
    throw std::invalid_argument("cannot parse coefficient '" + text +
                                "': " + e.what());
  }
}

PauliHamiltonian::PauliHamiltonian(uint32_t n) : n_(n) {
  if (n == 0) throw HamiltonianError("need at least one site");
}

void PauliHamiltonian::add(const PauliString& p, const Rat& c) {
  if (p.n != n_) throw HamiltonianError("term site count mismatch");
  if (!p.hermitian())
    throw HamiltonianError("non-Hermitian term: " + p.str());
  if (p.is_identity())
    throw HamiltonianError("identity term would break tracelessness");
  if (c == 0) return;
  PauliString key = p.prefactor_one();
  Rat scaled = p.sign() == 1 ? c : -c;
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(std::move(key), scaled);
  } else {
    it->second += scaled;
    if (it->second == 0) terms_.erase(it);
  }
}

void PauliHamiltonian::add(const PauliHamiltonian& other, const Rat& scale) {
  if (other.n_ != n_) throw HamiltonianError("site count mismatch");
  for (const auto& [p, c] : other.terms_) add(p, c * scale);
}

Rat PauliHamiltonian::coefficient(const PauliString& p) const {
  if (p.n != n_) throw HamiltonianError("term site count mismatch");
  if (!p.hermitian()) throw HamiltonianError("non-Hermitian query");
  auto it = terms_.find(p.prefactor_one());
  if (it == terms_.end()) return Rat(0);
  return p.sign() == 1 ? it->second : -it->second;
}

uint32_t PauliHamiltonian::locality() const {
  uint32_t w = 0;
  for (const auto& [p, c] : terms_) w = std::max(w, p.weight());
  return w;
}

PauliHamiltonian PauliHamiltonian::translated(uint32_t shift) const {
  PauliHamiltonian out(n_);
  for (const auto& [p, c] : terms_) out.add(p.translated(shift), c);
  return out;
}

PauliHamiltonian PauliHamiltonian::reflected() const {
  PauliHamiltonian out(n_);
  for (const auto& [p, c] : terms_) out.add(p.reflected(), c);
  return out;
}

std::string PauliHamiltonian::to_file_text() const {
  std::string out = "N=" + std::to_string(n_) + "\n";
  for (const auto& [p, c] : terms_)
    out += to_string(c) + "\t" + p.str() + "\n";
  return out;
}

PauliHamiltonian PauliHamiltonian::from_file_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  size_t line_no = 0;
  auto next_payload = [&](std::string& out) {
    while (std::getline(in, line)) {
      ++line_no;
      size_t a = line.find_first_not_of(" \t\r");
      if (a == std::string::npos) continue;
      size_t b = line.find_last_not_of(" \t\r");
      out = line.substr(a, b - a + 1);
      if (out.empty() || out[0] == '#') continue;
      return true;
    }
    return false;
  };
  std::string payload;
  if (!next_payload(payload) || payload.rfind("N=", 0) != 0)
    throw HamiltonianParseError("expected 'N=<sites>' header", line_no);
  uint32_t n = 0;
  try {
    n = static_cast<uint32_t>(std::stoul(payload.substr(2)));
  } catch (const std::exception&) {
    throw HamiltonianParseError("bad site count in header", line_no);
  }
  PauliHamiltonian h(n);
  while (next_payload(payload)) {
    size_t split = payload.find_first_of(" \t");
    if (split == std::string::npos)
      throw HamiltonianParseError("expected '<coefficient> <string>'", line_no);
    try {
      Rat c = parse_rational(payload.substr(0, split));
      PauliString p = parse_pauli(n, payload.substr(split + 1));
      h.add(p, c);
    } catch (const std::exception& e) {
      throw HamiltonianParseError(e.what(), line_no);
    }
  }
  return h;
}

}  // namespace stabtherm
