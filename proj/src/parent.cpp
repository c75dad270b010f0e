#include "stabtherm/parent.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "stabtherm/subsets.hpp"

namespace stabtherm {

namespace {

// Letters as 0=I, 1=X, 2=Y, 3=Z for the per-site splitting recursion.
constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};

uint32_t letter_of(const PauliString& p, uint32_t site) {
  const bool xb = p.x.get(site - 1), zb = p.z.get(site - 1);
  if (xb && zb) return 2;
  if (xb) return 1;
  if (zb) return 3;
  return 0;
}

PauliString from_letter_codes(uint32_t n, const std::vector<uint32_t>& codes) {
  PauliString p = PauliString::identity(n);
  uint32_t ny = 0;
  for (uint32_t s = 0; s < n; ++s) {
    switch (codes[s]) {
      case 1: p.x.set(s, true); break;
      case 2: p.x.set(s, true); p.z.set(s, true); ++ny; break;
      case 3: p.z.set(s, true); break;
      default: break;
    }
  }
  p.phase_exp = static_cast<uint8_t>(ny % 4);  // sign-free convention
  return p;
}

// The two letters that multiply (in order) to something proportional to w.
// For w=X the options are (Y,Z) and (Z,Y), and cyclically for Y, Z.
void other_letters(uint32_t w, uint32_t& m1, uint32_t& m2) {
  m1 = (w % 3) + 1;
  m2 = ((w + 1) % 3) + 1;
  if (m1 > m2) std::swap(m1, m2);
}

struct SplitScan {
  uint32_t n = 0, m = 0;
  const PauliString* g = nullptr;
  std::vector<uint32_t> pl, ql;          // letter codes per site
  std::vector<uint32_t> support_after;   // # support sites at index >= s
  uint32_t wp = 0, wq = 0;
  std::vector<Factorization>* out = nullptr;

  void run(uint32_t site) {
    if (site > n) {
      emit();
      return;
    }
    const uint32_t rest = support_after[site - 1];
    if (wp + wq + rest > 2 * m) return;  // remaining support cannot fit
    const uint32_t w = letter_of(*g, site);
    if (w == 0) {
      pl[site - 1] = ql[site - 1] = 0;
      run(site + 1);
      if (wp < m && wq < m) {
        for (uint32_t l = 1; l <= 3; ++l) {
          pl[site - 1] = ql[site - 1] = l;
          ++wp, ++wq;
          run(site + 1);
          --wp, --wq;
        }
        pl[site - 1] = ql[site - 1] = 0;
      }
      return;
    }
    uint32_t m1 = 0, m2 = 0;
    other_letters(w, m1, m2);
    const uint32_t cand[4][2] = {{w, 0}, {0, w}, {m1, m2}, {m2, m1}};
    for (const auto& c : cand) {
      const uint32_t dp = c[0] ? 1u : 0u, dq = c[1] ? 1u : 0u;
      if (wp + dp > m || wq + dq > m) continue;
      pl[site - 1] = c[0];
      ql[site - 1] = c[1];
      wp += dp, wq += dq;
      run(site + 1);
      wp -= dp, wq -= dq;
    }
    pl[site - 1] = ql[site - 1] = 0;
  }

  void emit() {
    Factorization f;
    f.p = from_letter_codes(n, pl);
    f.q = from_letter_codes(n, ql);
    if (f.p.is_identity() || f.q.is_identity()) return;
    PauliString prod = multiply(f.p, f.q);
    if (prod.x != g->x || prod.z != g->z)
      throw std::logic_error("split lost the symplectic part");
    f.g = *g;
    f.a_exp = ((int(g->phase_exp) - int(prod.phase_exp)) % 4 + 4) % 4;
    out->push_back(std::move(f));
  }
};

std::set<PauliString> collect_elements(const StabilizerTableau& t,
                                       uint32_t max_weight) {
  const uint32_t n = t.num_sites();
  const uint32_t w = std::min(max_weight, n);
  std::set<PauliString> elems;
  for (ColexSubsets subs(n, w); !subs.done(); subs.advance()) {
    BitVec region(n);
    for (uint32_t s : subs.current()) region.set(s, true);
    auto basis = t.subgroup_supported_in(region);
    if (basis.size() > 20)
      throw std::invalid_argument("supported subgroup too large to span");
    const uint64_t span = uint64_t{1} << basis.size();
    for (uint64_t mask = 1; mask < span; ++mask) {
      PauliString e = PauliString::identity(n);
      for (size_t j = 0; j < basis.size(); ++j)
        if ((mask >> j) & 1) e = multiply(e, basis[j]);
      elems.insert(std::move(e));
    }
  }
  return elems;
}

}  // namespace

std::string NonHermitianResultError::join(const std::vector<std::string>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i];
  return out;
}

std::vector<Factorization> enumerate_factorizations(const StabilizerTableau& t,
                                                    uint32_t m) {
  const uint32_t n = t.num_sites();
  if (m < 1 || m > n) throw std::invalid_argument("weight bound must lie in 1..n");
  std::vector<Factorization> out;
  for (const PauliString& g : collect_elements(t, 2 * m)) {
    std::vector<Factorization> local;
    SplitScan scan;
    scan.n = n;
    scan.m = m;
    scan.g = &g;
    scan.pl.assign(n, 0);
    scan.ql.assign(n, 0);
    scan.support_after.assign(n + 1, 0);
    for (uint32_t s = n; s >= 1; --s)
      scan.support_after[s - 1] =
          scan.support_after[s] + (letter_of(g, s) ? 1 : 0);
    scan.out = &local;
    scan.run(1);
    std::sort(local.begin(), local.end(),
              [](const Factorization& a, const Factorization& b) {
                if (a.p != b.p) return a.p < b.p;
                return a.q < b.q;
              });
    out.insert(out.end(), local.begin(), local.end());
  }
  return out;
}

std::vector<TranslationOrbit> translation_orbits(
    const std::vector<Factorization>& fs, const StabilizerTableau& t) {
  if (!t.is_circulant())
    throw std::invalid_argument("translation orbits need a circulant group");
  const uint32_t n = t.num_sites();
  std::map<std::pair<PauliString, PauliString>, std::vector<size_t>> orbits;
  for (size_t i = 0; i < fs.size(); ++i) {
    std::pair<PauliString, PauliString> key{fs[i].p, fs[i].q};
    for (uint32_t s = 1; s < n; ++s) {
      std::pair<PauliString, PauliString> cand{fs[i].p.translated(s),
                                               fs[i].q.translated(s)};
      if (cand < key) key = std::move(cand);
    }
    orbits[std::move(key)].push_back(i);
  }
  std::vector<TranslationOrbit> out;
  out.reserve(orbits.size());
  for (auto& [key, members] : orbits) out.push_back({std::move(members)});
  return out;
}

PauliHamiltonian assemble(
    uint32_t n, const std::vector<std::pair<Factorization, CRat>>& weighted) {
  std::map<PauliString, CRat> acc;
  for (const auto& [f, c] : weighted) {
    if (f.p.n != n || f.q.n != n)
      throw std::invalid_argument("factorization site count mismatch");
    acc[f.p] += c;
    acc[f.q] += -c.times_i_pow(f.a_exp);
  }
  std::vector<std::string> bad;
  PauliHamiltonian h(n);
  for (const auto& [p, c] : acc) {
    if (c.is_zero()) continue;
    if (!c.is_real()) {
      bad.push_back(p.str());
      continue;
    }
    h.add(p, c.re);
  }
  if (!bad.empty()) throw NonHermitianResultError(std::move(bad));
  return h;
}

ZeroEigenstateCheck verify_zero_eigenstate(const PauliHamiltonian& h,
                                           const StabilizerTableau& t) {
  if (h.num_sites() != t.num_sites())
    throw std::invalid_argument("operator and group site counts differ");
  ZeroEigenstateCheck out;
  for (const auto& [p, c] : h.terms())
    if (int s = t.expectation(p); s != 0) out.h_mean += c * Rat(s);
  CRat h2{Rat(0)};
  for (const auto& [p, cp] : h.terms())
    for (const auto& [q, cq] : h.terms()) {
      PauliString prod = multiply(p, q);
      if (int s = t.expectation(prod.prefactor_one()); s != 0)
        h2 += CRat(cp * cq * Rat(s)).times_i_pow(prod.prefix_exp());
    }
  if (!h2.is_real())
    throw std::logic_error("second moment of a Hermitian operator must be real");
  out.h2_mean = h2.re;
  out.zero_energy = out.h_mean == 0 && out.h2_mean == 0;
  return out;
}

DecompositionCertificate decompose(const PauliHamiltonian& h,
                                   const StabilizerTableau& t) {
  const uint32_t n = h.num_sites();
  if (n != t.num_sites())
    throw std::invalid_argument("operator and group site counts differ");
  if (n > 62) throw std::invalid_argument("class sizes overflow past 62 sites");

  std::map<PauliString, std::vector<const PauliString*>> classes;
  for (const auto& [p, c] : h.terms())
    classes[t.reduce_prefactor_one(p)].push_back(&p);

  DecompositionCertificate cert;
  cert.n = n;
  for (auto& [rep, members] : classes) {
    DecompositionClass cls;
    cls.representative = rep;
    cls.class_size = rep.is_identity() ? (uint64_t{1} << n) - 1
                                       : uint64_t{1} << n;
    const size_t k = members.size();
    cls.members.reserve(k);
    cls.h.reserve(k);
    for (const PauliString* p : members) {
      cls.members.push_back(*p);
      cls.h.push_back(h.terms().at(*p));
    }
    cls.a_exp.assign(k, std::vector<int>(k, 0));
    for (size_t i = 0; i < k; ++i)
      for (size_t j = 0; j < k; ++j) {
        PauliString prod = multiply(cls.members[i], cls.members[j]);
        auto w = t.membership(prod.prefactor_one());
        if (!w)
          throw std::logic_error("class members must multiply into the group");
        // i^a p q = sign * R with p q = i^e R, so a = -e plus the sign's 2.
        int a = -prod.prefix_exp() + (w->sign == 1 ? 0 : 2);
        cls.a_exp[i][j] = ((a % 4) + 4) % 4;
      }
    // Balance over the class: annihilation forces the phase-weighted
    // coefficient sum against any fixed member to vanish.
    CRat balance{Rat(0)};
    for (size_t j = 0; j < k; ++j)
      balance += CRat(cls.h[j]).times_i_pow(-cls.a_exp[0][j]);
    if (!balance.is_zero()) throw NotAnnihilatingError(cls.members[0].str());

    const Rat inv_size(-1, static_cast<int64_t>(cls.class_size));
    cls.c.assign(k, std::vector<CRat>(k));
    for (size_t i = 0; i < k; ++i)
      for (size_t j = 0; j < k; ++j)
        cls.c[i][j] = CRat(cls.h[j] * inv_size).times_i_pow(cls.a_exp[j][i]);
    cert.classes.push_back(std::move(cls));
  }
  return cert;
}

PauliHamiltonian reconstruct(const DecompositionCertificate& cert) {
  PauliHamiltonian out(cert.n);
  for (const auto& cls : cert.classes) {
    const size_t k = cls.members.size();
    const int64_t size = static_cast<int64_t>(cls.class_size);
    for (size_t i = 0; i < k; ++i) {
      // Coefficient of members[i] in sum_{p~q} c(p,q) (p - i^{a(p,q)} q):
      // the listed pairs contribute directly, the class members absent from
      // H contribute through their uniform c value.
      CRat val{Rat(0)};
      for (size_t j = 0; j < k; ++j) {
        val += cls.c[i][j];
        val += -cls.c[j][i].times_i_pow(cls.a_exp[j][i]);
      }
      val += CRat(cls.h[i] * Rat(size - static_cast<int64_t>(k), size));
      if (!val.is_real())
        throw std::logic_error("reconstructed coefficient must be real");
      if (val.re != 0) out.add(cls.members[i], val.re);
    }
  }
  return out;
}

NoGoAuditReport no_go_audit(const StabilizerTableau& t, uint32_t m) {
  NoGoAuditReport rep;
  rep.n = t.num_sites();
  rep.m = m;
  rep.scan_bound = std::min(2 * m + 1, rep.n);
  rep.min_support_weight = t.min_weight(rep.scan_bound);
  rep.protected_subsystem_size =
      rep.min_support_weight ? *rep.min_support_weight - 1 : rep.scan_bound;
  auto fs = enumerate_factorizations(t, m);
  rep.factorization_count = fs.size();
  for (const auto& f : fs) {
    const uint32_t wg = f.g.weight(), wp = f.p.weight(), wq = f.q.weight();
    if (wg > wp + wq) rep.support_union_bound_ok = false;
    if (std::max(wp, wq) * 2 < wg) rep.support_half_bound_ok = false;
    if (wg > rep.widest_factored_weight) {
      rep.widest_factored_weight = wg;
      rep.widest_example = f;
    }
  }
  return rep;
}

}  // namespace stabtherm
