#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "stabtherm/graph.hpp"
#include "stabtherm/hamiltonian.hpp"
#include "stabtherm/models.hpp"
#include "stabtherm/parent.hpp"
#include "stabtherm/spectral.hpp"
#include "stabtherm/tableau.hpp"

/* Deterministic report builders shared by the command-line tool and the
   acceptance suite.  Every function here returns content that depends only
   on its inputs (seeds included): no clocks, no locale, no thread-count
   sensitivity, so reruns are byte-identical after serialization. */

namespace stabtherm {

using ojson = nlohmann::ordered_json;

/* ---- maximal-mixedness scans ---------------------------------------- */

struct MiteRequest {
  enum class Kind { kKBody, kLLocal, kSubsystem };
  Kind kind = Kind::kKBody;
  uint32_t parameter = 0;       // k or l
  std::vector<uint32_t> sites;  // 1-based, for Kind::kSubsystem
};

/* Verdict document for one scan.  delta_g (the minimum element weight) and
   the derived uniformity ceiling are included up to max_weight_sites, above
   which the full-weight scan is skipped and both fields are null. */
ojson mite_report(const StabilizerTableau& t, const MiteRequest& req,
                  unsigned threads = 1, uint32_t max_weight_sites = 20);

/* Every bundled claim executed and compared against its expectation. */
ojson claims_report(const ModelBundle& bundle, unsigned threads = 1);

/* ---- parent-operator synthesis and verification ---------------------- */

struct SynthesisResult {
  PauliHamiltonian hamiltonian;
  ojson provenance;
};

/* Draw one exact rational coefficient per translation orbit of the
   real-phase (a = +-1) difference pairs at locality bound m and assemble
   the resulting annihilating operator.  Non-circulant groups fall back to
   one orbit per pair. */
SynthesisResult synthesize_orbit_hamiltonian(const StabilizerTableau& t,
                                             uint32_t m, uint64_t seed);

/* Exact zero-eigenstate check; optionally attaches the full decomposition
   certificate (classes, phase tables, rebuilt coefficients) when the check
   succeeds. */
ojson verify_report(const PauliHamiltonian& h, const StabilizerTableau& t,
                    bool with_certificate);

/* Synthesize -> verify -> decompose -> reconstruct, `trials` times with
   fresh coefficient draws; reconstruction must reproduce every coefficient
   exactly. */
ojson roundtrip_report(const StabilizerTableau& t, const std::string& label,
                       uint32_t trials, uint64_t seed);

/* ---- difference-pair audits ------------------------------------------ */

ojson audit_report(const StabilizerTableau& t, uint32_t m);

/* Ensemble audit over random maximal stabilizer groups: groups whose
   minimum element weight reaches delta_filter must admit no m-body pairs
   at all, and every enumerated pair must satisfy the support bounds and
   phase reciprocity.  The cohort can come out empty (reported, not an
   error): random groups rarely reach high minimum weight. */
ojson random_group_audit(uint32_t n, uint32_t count, uint32_t m,
                         uint32_t delta_filter, uint64_t seed,
                         unsigned threads = 1);

/* ---- independent-oracle cross-check ----------------------------------- */

/* Random graphs on 5..10 sites: for every subsystem of at most four sites
   and every cyclic window, the kernel verdict, the graph neighborhood
   criterion, and the dense reduced-density-matrix distance must agree. */
ojson oracle_equivalence_report(uint32_t graphs, uint64_t seed,
                                unsigned threads = 1);

/* ---- spectra ----------------------------------------------------------- */

struct SpectrumArtifacts {
  ojson summary;
  std::string eigenvalues_csv;  // index,eigenvalue
  std::string histogram_csv;    // r,empirical,goe,poisson
};

SpectrumArtifacts spectrum_run(const PauliHamiltonian& h,
                               const SectorSpec& spec,
                               double central_fraction = 0.5,
                               uint32_t bins = 20, size_t dim_limit = 20000);

/* Folded-ratio statistics pooled over all inequivalent momentum sectors
   (conjugate momenta share a spectrum and are listed as skipped), with
   inversion resolved at the self-conjugate momenta and both spin flips
   fixed to +1 where the operator allows.  Each sector's ratios are computed
   independently before pooling. */
ojson pooled_spectrum_report(const PauliHamiltonian& h,
                             double central_fraction = 0.5,
                             size_t dim_limit = 20000, unsigned threads = 1);

/* Reference-ensemble calibration: GOE matrices against the large-size
   folded-ratio mean, independent uniform levels against the uncorrelated
   mean. */
ojson spectral_calibration_report(uint32_t goe_matrices, uint32_t goe_size,
                                  uint32_t poisson_batches,
                                  uint32_t poisson_levels, uint64_t seed,
                                  unsigned threads = 1);

}  // namespace stabtherm
