#include "stabtherm/statevector.hpp"

#include <Eigen/Dense>

#include <bit>
#include <cmath>
#include <cstdlib>

namespace stabtherm {

namespace {

constexpr std::complex<double> kPhase[4] = {
    {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

uint64_t low_word(const BitVec& b) {
  return b.words().empty() ? 0 : b.words()[0];
}

void check_sites(uint32_t n, uint32_t max_sites, const char* what) {
  if (n > max_sites)
    throw ResourceLimitError(std::string(what) + " limited to " +
                             std::to_string(max_sites) + " sites, got " +
                             std::to_string(n));
}

}  // namespace

Amplitudes graph_statevector(const Graph& g, uint32_t max_sites) {
  const uint32_t n = g.num_sites();
  check_sites(n, std::min<uint32_t>(max_sites, 62), "dense graph state");
  const uint64_t dim = uint64_t{1} << n;
  const double mag = std::ldexp(1.0, -static_cast<int>(n) / 2) *
                     (n % 2 ? 1.0 / std::sqrt(2.0) : 1.0);
  Amplitudes v(dim, {mag, 0.0});
  for (const auto& [s, t] : g.edges()) {
    const uint64_t mask = (uint64_t{1} << (s - 1)) | (uint64_t{1} << (t - 1));
    for (uint64_t b = 0; b < dim; ++b)
      if ((b & mask) == mask) v[b] = -v[b];
  }
  return v;
}

Amplitudes apply_pauli(const PauliString& p, const Amplitudes& v) {
  if (p.n > 62 || v.size() != (uint64_t{1} << p.n))
    throw std::invalid_argument("state dimension does not match operator");
  const uint64_t xm = low_word(p.x), zm = low_word(p.z);
  Amplitudes out(v.size());
  const std::complex<double> base = kPhase[p.phase_exp & 3];
  for (uint64_t b = 0; b < v.size(); ++b) {
    const double sgn = (std::popcount(b & zm) & 1) ? -1.0 : 1.0;
    out[b ^ xm] = base * sgn * v[b];
  }
  return out;
}

std::complex<double> inner(const Amplitudes& a, const Amplitudes& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
  std::complex<double> s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

std::complex<double> pauli_expectation(const PauliString& p, const Amplitudes& v) {
  return inner(v, apply_pauli(p, v));
}

Amplitudes tableau_statevector(const StabilizerTableau& t, uint32_t max_sites) {
  const uint32_t n = t.num_sites();
  check_sites(n, std::min<uint32_t>(max_sites, 62), "dense stabilizer state");
  const uint64_t dim = uint64_t{1} << n;
  for (uint64_t seed = 0; seed < dim; ++seed) {
    Amplitudes v(dim, {0.0, 0.0});
    v[seed] = 1.0;
    // Project with (1+g)/2 for each generator; the result is either zero or
    // the stabilized state scaled by the surviving weight.
    for (const auto& g : t.generators()) {
      Amplitudes gv = apply_pauli(g, v);
      for (uint64_t b = 0; b < dim; ++b) v[b] = 0.5 * (v[b] + gv[b]);
    }
    double norm2 = 0;
    for (const auto& a : v) norm2 += std::norm(a);
    if (norm2 > 1e-12) {
      const double inv = 1.0 / std::sqrt(norm2);
      for (auto& a : v) a *= inv;
      return v;
    }
  }
  throw std::logic_error("projector sweep found no stabilized state");
}

std::vector<std::complex<double>> reduced_density_matrix(const Amplitudes& v,
                                                         uint32_t n,
                                                         const BitVec& region) {
  if (n > 62 || v.size() != (uint64_t{1} << n))
    throw std::invalid_argument("state dimension does not match site count");
  if (region.size() != n) throw std::invalid_argument("region size mismatch");
  const auto sites = mask_sites(region);
  const uint32_t k = static_cast<uint32_t>(sites.size());
  if (k == 0 || k > 30) throw std::invalid_argument("region must keep 1..30 sites");
  const uint64_t d = uint64_t{1} << k;

  // Scatter tables: region index bits -> state bits, and likewise for the
  // complement.
  std::vector<uint64_t> in_bit(k);
  for (uint32_t p = 0; p < k; ++p) in_bit[p] = uint64_t{1} << (sites[p] - 1);
  std::vector<uint64_t> out_bit;
  for (uint32_t s = 1; s <= n; ++s)
    if (!region.get(s - 1)) out_bit.push_back(uint64_t{1} << (s - 1));
  const uint32_t kc = static_cast<uint32_t>(out_bit.size());

  std::vector<uint64_t> scat_in(d, 0);
  for (uint64_t a = 1; a < d; ++a) {
    const uint32_t low = std::countr_zero(a);
    scat_in[a] = scat_in[a & (a - 1)] | in_bit[low];
  }
  const uint64_t dc = uint64_t{1} << kc;
  std::vector<uint64_t> scat_out(dc, 0);
  for (uint64_t r = 1; r < dc; ++r) {
    const uint32_t low = std::countr_zero(r);
    scat_out[r] = scat_out[r & (r - 1)] | out_bit[low];
  }

  std::vector<std::complex<double>> rho(d * d, {0.0, 0.0});
  for (uint64_t r = 0; r < dc; ++r) {
    const uint64_t base = scat_out[r];
    for (uint64_t a = 0; a < d; ++a) {
      const std::complex<double> va = v[base | scat_in[a]];
      if (va == std::complex<double>{}) continue;
      for (uint64_t b = 0; b < d; ++b)
        rho[a * d + b] += va * std::conj(v[base | scat_in[b]]);
    }
  }
  return rho;
}

double max_mixed_distance(const std::vector<std::complex<double>>& rho, uint32_t d) {
  if (rho.size() != uint64_t{d} * d) throw std::invalid_argument("bad matrix size");
  const double uniform = 1.0 / d;
  if (d <= 32) {
    Eigen::MatrixXcd m(d, d);
    for (uint32_t i = 0; i < d; ++i)
      for (uint32_t j = 0; j < d; ++j) m(i, j) = rho[uint64_t{i} * d + j];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    double tn = 0;
    for (uint32_t i = 0; i < d; ++i) tn += std::abs(es.eigenvalues()[i] - uniform);
    return tn;
  }
  double frob2 = 0;
  for (uint32_t i = 0; i < d; ++i)
    for (uint32_t j = 0; j < d; ++j) {
      std::complex<double> e = rho[uint64_t{i} * d + j];
      if (i == j) e -= uniform;
      frob2 += std::norm(e);
    }
  return std::sqrt(frob2);
}

}  // namespace stabtherm
