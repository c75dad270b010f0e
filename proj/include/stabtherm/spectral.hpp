#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "stabtherm/hamiltonian.hpp"

namespace stabtherm {

struct IncompatibleSectorError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct EmptySectorError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DimensionLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/* Which lattice symmetries the operator respects, checked term-by-term on
   the coefficient table (no matrices involved). */
struct SymmetryReport {
  bool translation = false;   // cyclic shift of sites
  bool inversion = false;     // site reflection i -> n + 1 - i
  bool spin_flip_x = false;   // conjugation by prod_i X_i
  bool spin_flip_z = false;   // conjugation by prod_i Z_i
};
SymmetryReport check_symmetries(const PauliHamiltonian& h);

/* A simultaneous eigensector of the chosen symmetries.  momentum is the
   translation character index t (eigenvalue e^{2 pi i t / n}); inversion and
   the two spin flips take +1/-1.  Leaving a field unset skips that
   symmetry.  Momentum and inversion combine only at t = 0 or t = n/2. */
struct SectorSpec {
  std::optional<uint32_t> momentum;
  std::optional<int> inversion;
  std::optional<int> spin_flip_x;
  std::optional<int> spin_flip_z;
};

/* Orthonormal symmetry-adapted basis: sparse vectors over computational
   states, one per surviving orbit, ordered by smallest member state. */
struct SectorBasis {
  uint32_t n = 0;
  SectorSpec spec;
  std::vector<std::vector<std::pair<uint32_t, std::complex<double>>>> vectors;
  size_t dimension() const { return vectors.size(); }
};

SectorBasis sector_basis(uint32_t n, const SectorSpec& spec,
                         uint32_t max_sites = 26);

/* Ascending eigenvalues of the compression of h onto the sector basis.
   Throws EmptySectorError for a zero-dimensional sector and
   DimensionLimitError when the sector exceeds dim_limit. */
std::vector<double> sector_eigenvalues(const PauliHamiltonian& h,
                                       const SectorBasis& basis,
                                       size_t dim_limit = 20000);

/* Consecutive-gap ratio statistics r = min(s_{i+1}/s_i, s_i/s_{i+1}).
   Keeps the central fraction of the sorted spectrum, drops gaps below
   degeneracy_scale times the full spectral width (counting them), and
   needs at least three retained levels. */
struct RStatistics {
  size_t levels_total = 0;
  size_t levels_retained = 0;
  size_t degenerate_gaps = 0;
  std::vector<double> r_values;
  double mean_r = 0.0;
};
RStatistics r_statistics(std::vector<double> levels, double central_fraction,
                         double degeneracy_scale = 1e-12);

/* Folded-ratio reference densities on [0, 1] and their means. */
double poisson_r_density(double r);
double goe_r_density(double r);
/// 2 ln 2 - 1, the folded-ratio mean of an uncorrelated spectrum.
double poisson_mean_r();
/// Large-matrix mean folded ratio of the Gaussian orthogonal ensemble.
inline constexpr double kGoeMeanR = 0.5307;
/// Mean of the 3x3 folded surmise density (slightly above the large-N value).
double goe_surmise_mean_r();

/* Ascending eigenvalues of one GOE sample: (B + B^T)/2 with standard normal
   entries. */
std::vector<double> goe_eigenvalues(uint32_t size, std::mt19937_64& rng);

}  // namespace stabtherm
