#include "stabtherm/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numbers>

namespace stabtherm {

namespace {

bool same_terms(const PauliHamiltonian& a, const PauliHamiltonian& b) {
  return a.terms() == b.terms();
}

}  // namespace

SymmetryReport check_symmetries(const PauliHamiltonian& h) {
  SymmetryReport rep;
  rep.translation = same_terms(h, h.translated(1));
  rep.inversion = same_terms(h, h.reflected());
  // Conjugating by prod X maps each term to (-1)^{#Z-type sites} times
  // itself, so invariance means no term carries odd z-weight; likewise for
  // prod Z and x-weight.
  rep.spin_flip_x = true;
  rep.spin_flip_z = true;
  for (const auto& [p, c] : h.terms()) {
    if (p.z.popcount() % 2) rep.spin_flip_x = false;
    if (p.x.popcount() % 2) rep.spin_flip_z = false;
  }
  return rep;
}

SectorBasis sector_basis(uint32_t n, const SectorSpec& spec,
                         uint32_t max_sites) {
  if (n < 1) throw std::invalid_argument("need at least one site");
  if (n > std::min<uint32_t>(max_sites, 31))
    throw DimensionLimitError("state space limited to " +
                              std::to_string(std::min<uint32_t>(max_sites, 31)) +
                              " sites, got " + std::to_string(n));
  if (spec.momentum && *spec.momentum >= n)
    throw IncompatibleSectorError("momentum index must lie in 0..n-1");
  for (auto v : {spec.inversion, spec.spin_flip_x, spec.spin_flip_z})
    if (v && *v != 1 && *v != -1)
      throw IncompatibleSectorError("parity labels must be +1 or -1");
  if (spec.momentum && spec.inversion) {
    const uint32_t t = *spec.momentum;
    if (!(t == 0 || (n % 2 == 0 && t == n / 2)))
      throw IncompatibleSectorError(
          "inversion mixes momenta t and -t; combine them only at t = 0 or "
          "t = n/2");
  }
  if (spec.spin_flip_x && spec.spin_flip_z && n % 2 != 0)
    throw IncompatibleSectorError(
        "the two spin flips anticommute on an odd chain");

  const uint32_t dim = uint32_t{1} << n;
  const uint32_t full = dim - 1;

  // The spin-flip-z label is diagonal: it filters states by site parity and
  // never mixes them.
  const bool use_c = spec.spin_flip_x.has_value();
  const bool use_r = spec.inversion.has_value();
  const bool use_t = spec.momentum.has_value();
  const uint32_t t_val = use_t ? *spec.momentum : 0;

  auto reflect_state = [n](uint32_t b) {
    uint32_t r = 0;
    for (uint32_t i = 0; i < n; ++i)
      if ((b >> i) & 1) r |= uint32_t{1} << (n - 1 - i);
    return r;
  };
  auto rotate_state = [n, full](uint32_t b, uint32_t j) {
    if (j == 0) return b;
    return ((b << j) | (b >> (n - j))) & full;
  };

  // Group elements: complement^e * shift^j * reflect^f with the character
  // px^e * omega^{t j} * inv^f; all three act as sign-free permutations of
  // basis states.
  struct Element {
    uint32_t e, j, f;
    std::complex<double> chi;
  };
  std::vector<Element> elements;
  const double px = spec.spin_flip_x.value_or(1);
  const double inv = spec.inversion.value_or(1);
  for (uint32_t e = 0; e <= (use_c ? 1u : 0u); ++e)
    for (uint32_t j = 0; j < (use_t ? n : 1u); ++j)
      for (uint32_t f = 0; f <= (use_r ? 1u : 0u); ++f) {
        const double angle =
            2.0 * std::numbers::pi * double(t_val) * double(j) / double(n);
        std::complex<double> chi = std::polar(1.0, angle);
        chi *= (e ? px : 1.0) * (f ? inv : 1.0);
        elements.push_back({e, j, f, chi});
      }

  SectorBasis basis;
  basis.n = n;
  basis.spec = spec;
  std::vector<bool> visited(dim, false);
  const double norm_tol = 1e-6;
  for (uint32_t b = 0; b < dim; ++b) {
    if (visited[b]) continue;
    if (spec.spin_flip_z) {
      const int parity = (std::popcount(b) % 2) ? -1 : 1;
      if (parity != *spec.spin_flip_z) {
        visited[b] = true;
        continue;
      }
    }
    // Orbit sum sum_gamma conj(chi(gamma)) |gamma b>.
    std::map<uint32_t, std::complex<double>> acc;
    for (const auto& el : elements) {
      uint32_t img = b;
      if (el.f) img = reflect_state(img);
      img = rotate_state(img, el.j);
      if (el.e) img ^= full;
      acc[img] += std::conj(el.chi);
    }
    double norm2 = 0;
    for (auto& [state, coef] : acc) {
      visited[state] = true;
      norm2 += std::norm(coef);
    }
    if (norm2 < norm_tol) continue;
    const double scale = 1.0 / std::sqrt(norm2);
    std::vector<std::pair<uint32_t, std::complex<double>>> vec;
    vec.reserve(acc.size());
    for (auto& [state, coef] : acc)
      if (std::abs(coef) > 1e-9) vec.emplace_back(state, coef * scale);
    basis.vectors.push_back(std::move(vec));
  }
  return basis;
}

std::vector<double> sector_eigenvalues(const PauliHamiltonian& h,
                                       const SectorBasis& basis,
                                       size_t dim_limit) {
  if (h.num_sites() != basis.n)
    throw std::invalid_argument("operator and basis site counts differ");
  const size_t d = basis.dimension();
  if (d == 0) throw EmptySectorError("sector has dimension zero");
  if (d > dim_limit)
    throw DimensionLimitError("sector dimension " + std::to_string(d) +
                              " exceeds limit " + std::to_string(dim_limit));
  const uint32_t n = basis.n;
  const uint32_t dim = uint32_t{1} << n;

  // Each computational state belongs to at most one basis vector, so a
  // state-to-owner table turns matrix assembly into a scatter.
  std::vector<int32_t> owner(dim, -1);
  std::vector<std::complex<double>> owner_amp(dim);
  for (size_t i = 0; i < d; ++i)
    for (const auto& [state, amp] : basis.vectors[i]) {
      owner[state] = static_cast<int32_t>(i);
      owner_amp[state] = amp;
    }

  struct Term {
    uint32_t xm, zm;
    std::complex<double> val;
  };
  constexpr std::complex<double> kPhase[4] = {
      {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  std::vector<Term> terms;
  terms.reserve(h.num_terms());
  for (const auto& [p, c] : h.terms())
    terms.push_back({static_cast<uint32_t>(p.x.words()[0]),
                     static_cast<uint32_t>(p.z.words()[0]),
                     kPhase[p.phase_exp & 3] * to_double(c)});

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (size_t j = 0; j < d; ++j)
    for (const auto& [state, amp] : basis.vectors[j])
      for (const auto& term : terms) {
        const uint32_t target = state ^ term.xm;
        const int32_t i = owner[target];
        if (i < 0) continue;
        const double sgn = (std::popcount(state & term.zm) & 1) ? -1.0 : 1.0;
        m(i, j) += std::conj(owner_amp[target]) * term.val * sgn * amp;
      }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  std::vector<double> out(d);
  for (size_t i = 0; i < d; ++i) out[i] = es.eigenvalues()[i];
  return out;
}

RStatistics r_statistics(std::vector<double> levels, double central_fraction,
                         double degeneracy_scale) {
  if (central_fraction <= 0.0 || central_fraction > 1.0)
    throw std::invalid_argument("central fraction must lie in (0, 1]");
  std::sort(levels.begin(), levels.end());
  RStatistics st;
  st.levels_total = levels.size();
  const size_t keep = std::max<size_t>(
      3, static_cast<size_t>(std::llround(central_fraction * levels.size())));
  if (levels.size() < 3 || keep > levels.size())
    throw std::invalid_argument("need at least three retained levels");
  const size_t lo = (levels.size() - keep) / 2;
  std::vector<double> kept(levels.begin() + lo, levels.begin() + lo + keep);
  st.levels_retained = kept.size();

  const double width = levels.back() - levels.front();
  const double tol = degeneracy_scale * width;
  std::vector<double> gaps;
  gaps.reserve(kept.size());
  for (size_t i = 1; i < kept.size(); ++i) {
    const double s = kept[i] - kept[i - 1];
    if (s <= tol)
      ++st.degenerate_gaps;
    else
      gaps.push_back(s);
  }
  double sum = 0;
  for (size_t i = 1; i < gaps.size(); ++i) {
    const double r = gaps[i] / gaps[i - 1];
    const double folded = std::min(r, 1.0 / r);
    st.r_values.push_back(folded);
    sum += folded;
  }
  st.mean_r = st.r_values.empty() ? 0.0 : sum / double(st.r_values.size());
  return st;
}

double poisson_r_density(double r) {
  if (r < 0.0 || r > 1.0) return 0.0;
  return 2.0 / ((1.0 + r) * (1.0 + r));
}

double goe_r_density(double r) {
  if (r < 0.0 || r > 1.0) return 0.0;
  const double num = r + r * r;
  const double den = std::pow(1.0 + r + r * r, 2.5);
  return 2.0 * (27.0 / 8.0) * num / den;
}

double poisson_mean_r() { return 2.0 * std::numbers::ln2 - 1.0; }

double goe_surmise_mean_r() {
  // Simpson integration of r * density over [0, 1]; the density is smooth,
  // so this converges far past the tolerance any test uses.
  const int steps = 1 << 16;
  const double hstep = 1.0 / steps;
  double acc = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double r = i * hstep;
    const double wgt = (i == 0 || i == steps) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    acc += wgt * r * goe_r_density(r);
  }
  return acc * hstep / 3.0;
}

std::vector<double> goe_eigenvalues(uint32_t size, std::mt19937_64& rng) {
  if (size < 2) throw std::invalid_argument("need at least a 2x2 matrix");
  /* Box-Muller on raw 53-bit draws, so the sample stream depends only on
     the generator, never on library distribution internals. */
  const auto normal = [&rng]() {
    const double u1 = (double(rng() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = double(rng() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  };
  Eigen::MatrixXd m(size, size);
  for (uint32_t i = 0; i < size; ++i)
    for (uint32_t j = 0; j <= i; ++j) {
      const double a = normal();
      if (i == j) {
        m(i, i) = a;
      } else {
        const double b = normal();
        m(i, j) = m(j, i) = 0.5 * (a + b);
      }
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  std::vector<double> out(size);
  for (uint32_t i = 0; i < size; ++i) out[i] = es.eigenvalues()[i];
  return out;
}

}  // namespace stabtherm
