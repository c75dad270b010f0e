#include "stabtherm/tableau.hpp"

#include <algorithm>
#include <sstream>

#include "stabtherm/subsets.hpp"

namespace stabtherm {

namespace {

// Column accessor over the (x | z) block matrix, X columns first.
inline bool col_bit(const PauliString& p, uint32_t col) {
  return col < p.n ? p.x.get(col) : p.z.get(col - p.n);
}

}  // namespace

StabilizerTableau StabilizerTableau::from_generators(
    uint32_t n, const std::vector<PauliString>& gens) {
  if (n == 0) throw TableauError("site count must be positive");
  if (gens.size() != n)
    throw TableauError("expected " + std::to_string(n) + " generators, got " +
                       std::to_string(gens.size()));
  for (size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].n != n)
      throw TableauError("generator " + std::to_string(i) +
                         " has wrong site count");
    if (!gens[i].hermitian()) throw NonHermitianGeneratorError(i);
  }
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = i + 1; j < gens.size(); ++j)
      if (!commutes(gens[i], gens[j])) throw NonCommutingError(i, j);

  // Incremental Gauss-Jordan over GF(2), multiplying rows as group
  // elements so the phases ride along.  Inserting a generator that
  // reduces to the identity exposes a dependency (sign +) or a group
  // containing -identity (sign -), attributed to the offending input.
  std::vector<PauliString> rows;
  std::vector<uint32_t> pivots;  // ascending, parallel to rows
  for (size_t i = 0; i < gens.size(); ++i) {
    PauliString r = gens[i];
    for (size_t k = 0; k < rows.size(); ++k)
      if (col_bit(r, pivots[k])) r = multiply(r, rows[k]);
    if (r.x.none() && r.z.none()) {
      if (r.phase_exp != 0) throw MinusIdentityError();
      throw DependentGeneratorError(i);
    }
    uint32_t lead = 0;
    while (!col_bit(r, lead)) ++lead;
    for (size_t k = 0; k < rows.size(); ++k)
      if (col_bit(rows[k], lead)) rows[k] = multiply(rows[k], r);
    size_t pos = size_t(std::lower_bound(pivots.begin(), pivots.end(), lead) -
                        pivots.begin());
    rows.insert(rows.begin() + pos, std::move(r));
    pivots.insert(pivots.begin() + pos, lead);
  }

  StabilizerTableau t;
  t.n_ = n;
  t.rows_ = std::move(rows);
  t.pivot_col_ = std::move(pivots);
  return t;
}

std::optional<GroupElementWitness> StabilizerTableau::membership(
    const PauliString& query) const {
  if (query.n != n_)
    throw std::invalid_argument("membership query has wrong site count");
  if (!query.hermitian())
    throw std::invalid_argument("membership query must be Hermitian: " +
                                query.str());

  BitVec rx = query.x, rz = query.z;
  std::vector<uint8_t> coeff(n_, 0);
  for (size_t r = 0; r < rows_.size(); ++r) {
    uint32_t col = pivot_col_[r];
    bool bit = col < n_ ? rx.get(col) : rz.get(col - n_);
    if (bit) {
      coeff[r] = 1;
      rx.xor_in(rows_[r].x);
      rz.xor_in(rows_[r].z);
    }
  }
  if (!rx.none() || !rz.none()) return std::nullopt;

  PauliString prod = PauliString::identity(n_);
  for (size_t r = 0; r < rows_.size(); ++r)
    if (coeff[r]) prod = multiply(prod, rows_[r]);
  // prod and query share (x, z); both are Hermitian, so they differ by a
  // sign: i^(k_prod - k_query) is +/-1.
  int d = (int(prod.phase_exp) - int(query.phase_exp) + 4) % 4;
  return GroupElementWitness{coeff, d == 0 ? 1 : -1};
}

int StabilizerTableau::expectation(const PauliString& query) const {
  auto w = membership(query);
  return w ? w->sign : 0;
}

std::vector<PauliString> StabilizerTableau::subgroup_supported_in(
    const BitVec& region) const {
  if (region.size() != n_)
    throw std::invalid_argument("region mask has wrong site count");

  // Restricted columns: both X and Z bits on every site outside region.
  std::vector<uint32_t> cols;
  for (uint32_t i = 0; i < n_; ++i)
    if (!region.get(i)) {
      cols.push_back(i);        // x column
      cols.push_back(i + n_);   // z column
    }

  // Left-kernel of the restricted matrix by row elimination with
  // combination tracking.
  std::vector<BitVec> rx(n_), rz(n_), combo(n_);
  for (uint32_t r = 0; r < n_; ++r) {
    rx[r] = rows_[r].x;
    rz[r] = rows_[r].z;
    combo[r] = BitVec(n_);
    combo[r].set(r, true);
  }
  auto bit = [&](uint32_t r, uint32_t col) {
    return col < n_ ? rx[r].get(col) : rz[r].get(col - n_);
  };
  size_t cur = 0;
  for (uint32_t col : cols) {
    size_t pr = cur;
    while (pr < n_ && !bit(uint32_t(pr), col)) ++pr;
    if (pr == n_) continue;
    std::swap(rx[cur], rx[pr]);
    std::swap(rz[cur], rz[pr]);
    std::swap(combo[cur], combo[pr]);
    for (size_t r = 0; r < n_; ++r)
      if (r != cur && bit(uint32_t(r), col)) {
        rx[r].xor_in(rx[cur]);
        rz[r].xor_in(rz[cur]);
        combo[r].xor_in(combo[cur]);
      }
    ++cur;
  }

  std::vector<PauliString> out;
  for (size_t r = cur; r < n_; ++r) {
    PauliString e = PauliString::identity(n_);
    for (uint32_t g = 0; g < n_; ++g)
      if (combo[r].get(g)) e = multiply(e, rows_[g]);
    out.push_back(std::move(e));
  }
  std::sort(out.begin(), out.end(), [](const PauliString& a,
                                       const PauliString& b) {
    if (auto c = a.z <=> b.z; c != 0) return c < 0;
    if (auto c = a.x <=> b.x; c != 0) return c < 0;
    return a.phase_exp < b.phase_exp;
  });
  return out;
}

bool StabilizerTableau::has_element_supported_in(const BitVec& region) const {
  if (region.size() != n_)
    throw std::invalid_argument("region mask has wrong site count");
  // Rank of the restricted matrix; deficiency means a nonempty kernel.
  std::vector<BitVec> rx(n_), rz(n_);
  for (uint32_t r = 0; r < n_; ++r) {
    rx[r] = rows_[r].x;
    rz[r] = rows_[r].z;
  }
  auto bit = [&](size_t r, uint32_t col) {
    return col < n_ ? rx[r].get(col) : rz[r].get(col - n_);
  };
  size_t cur = 0;
  for (uint32_t i = 0; i < n_ && cur < n_; ++i) {
    if (region.get(i)) continue;
    for (uint32_t col : {i, i + n_}) {
      size_t pr = cur;
      while (pr < n_ && !bit(pr, col)) ++pr;
      if (pr == n_) continue;
      std::swap(rx[cur], rx[pr]);
      std::swap(rz[cur], rz[pr]);
      for (size_t r = cur + 1; r < n_; ++r)
        if (bit(r, col)) {
          rx[r].xor_in(rx[cur]);
          rz[r].xor_in(rz[cur]);
        }
      ++cur;
      if (cur == n_) break;
    }
  }
  return cur < n_;
}

std::optional<uint32_t> StabilizerTableau::min_weight(uint32_t bound) const {
  uint32_t cap = std::min(bound, n_);
  for (uint32_t w = 1; w <= cap; ++w) {
    for (ColexSubsets it(n_, w); !it.done(); it.advance()) {
      BitVec region(n_);
      for (uint32_t s : it.current()) region.set(s, true);
      if (has_element_supported_in(region)) return w;
    }
  }
  return std::nullopt;
}

bool StabilizerTableau::is_circulant() const {
  for (const PauliString& g : rows_) {
    auto w = membership(g.translated(1));
    if (!w || w->sign != 1) return false;
  }
  return true;
}

PauliString StabilizerTableau::reduce_prefactor_one(
    const PauliString& query) const {
  if (query.n != n_)
    throw std::invalid_argument("reduction query has wrong site count");
  PauliString r(n_);
  r.x = query.x;
  r.z = query.z;
  for (size_t row = 0; row < rows_.size(); ++row) {
    uint32_t col = pivot_col_[row];
    bool bit = col < n_ ? r.x.get(col) : r.z.get(col - n_);
    if (bit) {
      r.x.xor_in(rows_[row].x);
      r.z.xor_in(rows_[row].z);
    }
  }
  return r.prefactor_one();
}

std::string StabilizerTableau::to_file_text() const {
  std::string out = "N=" + std::to_string(n_) + "\n";
  for (const PauliString& g : rows_) out += g.str() + "\n";
  return out;
}

StabilizerTableau StabilizerTableau::from_file_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  uint32_t n = 0;
  bool have_n = false;
  std::vector<PauliString> gens;
  while (std::getline(in, line)) {
    ++lineno;
    size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    size_t b = line.find_last_not_of(" \t\r");
    std::string body = line.substr(a, b - a + 1);
    if (body[0] == '#') continue;
    if (!have_n) {
      if (body.rfind("N=", 0) != 0)
        throw TableauParseError(lineno, "expected header 'N=<sites>'");
      try {
        n = uint32_t(std::stoul(body.substr(2)));
      } catch (const std::exception&) {
        throw TableauParseError(lineno, "bad site count '" + body + "'");
      }
      have_n = true;
      continue;
    }
    try {
      gens.push_back(parse_pauli(n, body));
    } catch (const std::invalid_argument& e) {
      throw TableauParseError(lineno, e.what());
    }
  }
  if (!have_n) throw TableauParseError(0, "missing 'N=<sites>' header");
  return from_generators(n, gens);
}

StabilizerTableau random_stabilizer_tableau(uint32_t n, std::mt19937_64& rng,
                                            uint32_t gates) {
  if (n == 0) throw TableauError("need at least one site");
  if (gates == 0) gates = 4 * n;
  std::vector<PauliString> gens;
  gens.reserve(n);
  for (uint32_t i = 1; i <= n; ++i) {
    PauliString z = PauliString::identity(n);
    z.z.set(i - 1, true);
    gens.push_back(std::move(z));
  }
  // Gate-by-gate conjugation in the i^k X^x Z^z bookkeeping:
  //   H_q:        k += 2 x_q z_q, then swap x_q <-> z_q
  //   S_q:        k += x_q,       then z_q ^= x_q
  //   CNOT(a->b): x_b ^= x_a, z_a ^= z_b
  //   CZ(a,b):    k += 2 x_a x_b, then z_b ^= x_a, z_a ^= x_b
  auto site = [&] { return static_cast<uint32_t>(rng() % n); };
  for (uint32_t g = 0; g < gates; ++g) {
    const uint32_t kind = n >= 2 ? rng() % 4 : rng() % 2;
    uint32_t a = site(), b = site();
    while (kind >= 2 && b == a) b = site();
    for (PauliString& p : gens) {
      const bool xa = p.x.get(a), za = p.z.get(a);
      switch (kind) {
        case 0:  // H on a
          if (xa && za) p.phase_exp = uint8_t((p.phase_exp + 2) & 3);
          p.x.set(a, za);
          p.z.set(a, xa);
          break;
        case 1:  // S on a
          if (xa) {
            p.phase_exp = uint8_t((p.phase_exp + 1) & 3);
            p.z.flip(a);
          }
          break;
        case 2:  // CNOT a -> b
          if (xa) p.x.flip(b);
          if (p.z.get(b)) p.z.flip(a);
          break;
        default:  // CZ on a, b
          if (xa && p.x.get(b)) p.phase_exp = uint8_t((p.phase_exp + 2) & 3);
          if (xa) p.z.flip(b);
          if (p.x.get(b)) p.z.flip(a);
          break;
      }
    }
  }
  for (PauliString& p : gens)
    if (rng() & 1) p.phase_exp = uint8_t((p.phase_exp + 2) & 3);
  return StabilizerTableau::from_generators(n, gens);
}

}  // namespace stabtherm
