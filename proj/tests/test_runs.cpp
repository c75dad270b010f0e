#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "doctest.h"
#include "stabtherm/graph.hpp"
#include "stabtherm/models.hpp"
#include "stabtherm/pauli.hpp"
#include "stabtherm/runs.hpp"
#include "stabtherm/tableau.hpp"

using stabtherm::MiteRequest;
using stabtherm::ModelBundle;
using stabtherm::PauliHamiltonian;
using stabtherm::Rat;
using stabtherm::SectorSpec;
using stabtherm::StabilizerTableau;
using stabtherm::ojson;
using stabtherm::parse_pauli;

namespace {

size_t count_lines(const std::string& text) {
  return size_t(std::count(text.begin(), text.end(), '\n'));
}

StabilizerTableau perfect_code_state() {
  const std::vector<std::string> texts = {
      "+X1 Z2 Z3 X4", "+X2 Z3 Z4 X5", "+X1 X3 Z4 Z5", "+Z1 X2 X4 Z5",
      "+Z1 Z2 Z3 Z4 Z5"};
  std::vector<stabtherm::PauliString> gens;
  for (const auto& s : texts) gens.push_back(parse_pauli(5, s));
  return StabilizerTableau::from_generators(5, gens);
}

}  // namespace

TEST_CASE("mixedness reports carry verdict, witness, and weight context") {
  const auto g1 = stabtherm::g1_model(8);

  MiteRequest k3;
  k3.kind = MiteRequest::Kind::kKBody;
  k3.parameter = 3;
  const ojson holds = stabtherm::mite_report(g1.tableau, k3, 2);
  CHECK(holds["kind"] == "mite");
  CHECK(holds["n"] == 8);
  CHECK(holds["property"] == "k_body");
  CHECK(holds["parameter"] == 3);
  CHECK(holds["holds"] == true);
  CHECK(holds["witness"].is_null());
  CHECK(holds["regions_confirmed"] == 56);
  CHECK(holds["delta_g"] == 4);
  CHECK(holds["max_uniformity"] == 3);

  MiteRequest k4 = k3;
  k4.parameter = 4;
  const ojson fails = stabtherm::mite_report(g1.tableau, k4, 2);
  CHECK(fails["holds"] == false);
  CHECK(fails["witness"]["sites"] == std::vector<uint32_t>{1, 2, 3, 5});
  CHECK(fails["witness"]["element"] == "+Z1 Y2 X3 Y5");

  // Above the weight-scan cutoff the derived fields are null, not wrong.
  const ojson capped = stabtherm::mite_report(g1.tableau, k3, 1, 4);
  CHECK(capped["delta_g"].is_null());
  CHECK(capped["max_uniformity"].is_null());

  const auto eap = stabtherm::eap_model(8);
  MiteRequest sub;
  sub.kind = MiteRequest::Kind::kSubsystem;
  sub.sites = {1, 5};
  const ojson pair = stabtherm::mite_report(eap.tableau, sub);
  CHECK(pair["property"] == "subsystem");
  CHECK(pair["sites"] == std::vector<uint32_t>{1, 5});
  CHECK(pair["holds"] == false);
  CHECK(pair["witness"]["element"] == "+X1 X5");

  CHECK(stabtherm::mite_report(g1.tableau, k3, 1).dump() ==
        stabtherm::mite_report(g1.tableau, k3, 7).dump());

  MiteRequest bad = sub;
  bad.sites = {1, 1};
  CHECK_THROWS_AS(stabtherm::mite_report(eap.tableau, bad),
                  std::invalid_argument);
}

TEST_CASE("claim reports aggregate pass state over the bundle") {
  const ojson j = stabtherm::claims_report(stabtherm::g2_model(9), 2);
  CHECK(j["kind"] == "model_claims");
  CHECK(j["model"] == "g2");
  CHECK(j["n"] == 9);
  REQUIRE(j["claims"].is_array());
  CHECK(j["claims"].size() == 5);
  for (const auto& row : j["claims"]) {
    CHECK(row["passed"] == true);
    CHECK(!row["label"].get<std::string>().empty());
    CHECK(!row["detail"].get<std::string>().empty());
  }
  CHECK(j["all_passed"] == true);

  auto broken = stabtherm::g2_model(9);
  broken.claims[1].expected = false;
  const ojson bad = stabtherm::claims_report(broken, 1);
  CHECK(bad["all_passed"] == false);
  CHECK(bad["claims"][1]["passed"] == false);
}

TEST_CASE("orbit synthesis is seed-deterministic and annihilating") {
  const auto g1 = stabtherm::g1_model(10);
  const auto a = stabtherm::synthesize_orbit_hamiltonian(g1.tableau, 2, 123);
  const auto b = stabtherm::synthesize_orbit_hamiltonian(g1.tableau, 2, 123);
  CHECK(a.hamiltonian == b.hamiltonian);
  CHECK(a.provenance.dump() == b.provenance.dump());
  const auto c = stabtherm::synthesize_orbit_hamiltonian(g1.tableau, 2, 124);
  CHECK(a.hamiltonian != c.hamiltonian);

  CHECK(a.provenance["kind"] == "synthesis");
  CHECK(a.provenance["n"] == 10);
  CHECK(a.provenance["m"] == 2);
  CHECK(a.provenance["seed"] == 123);
  CHECK(a.provenance["phase_filter"] == "real");
  CHECK(a.provenance["orbit_count"] == a.provenance["orbits"].size());
  CHECK(a.provenance["term_count"] == a.hamiltonian.num_terms());
  CHECK(a.provenance["locality"] == a.hamiltonian.locality());
  CHECK(a.hamiltonian.locality() <= 2);
  size_t members = 0;
  for (const auto& orbit : a.provenance["orbits"]) {
    CHECK(orbit["size"] == orbit["members"].size());
    members += orbit["members"].size();
  }
  CHECK(members == a.provenance["pair_count"].get<size_t>());
  CHECK(stabtherm::verify_zero_eigenstate(a.hamiltonian, g1.tableau)
            .zero_energy);

  // Non-circulant groups fall back to one orbit per pair.
  stabtherm::Graph path(4);
  path.add_edge(1, 2);
  path.add_edge(2, 3);
  path.add_edge(3, 4);
  const auto t = stabtherm::graph_to_stabilizer(path);
  const auto d = stabtherm::synthesize_orbit_hamiltonian(t, 2, 7);
  CHECK(d.provenance["pair_count"] == d.provenance["orbit_count"]);
  for (const auto& orbit : d.provenance["orbits"])
    CHECK(orbit["size"] == 1);
  CHECK(stabtherm::verify_zero_eigenstate(d.hamiltonian, t).zero_energy);

  // A weight floor above 2m leaves nothing to synthesize from.
  const auto idle =
      stabtherm::synthesize_orbit_hamiltonian(perfect_code_state(), 1, 3);
  CHECK(idle.provenance["pair_count"] == 0);
  CHECK(idle.hamiltonian.num_terms() == 0);
}

TEST_CASE("verification reports attach exact certificates on success") {
  const auto g1 = stabtherm::g1_model(8, Rat(3, 4));
  const ojson j = stabtherm::verify_report(*g1.hamiltonian, g1.tableau, true);
  CHECK(j["kind"] == "verify");
  CHECK(j["n"] == 8);
  CHECK(j["term_count"] == 16);
  CHECK(j["locality"] == 2);
  CHECK(j["zero_energy"] == true);
  CHECK(j["h_mean"] == "0");
  CHECK(j["h2_mean"] == "0");
  REQUIRE(!j["certificate"].is_null());
  CHECK(j["certificate"]["class_count"] == j["certificate"]["classes"].size());
  CHECK(j["certificate"]["reconstruction_exact"] == true);
  for (const auto& cls : j["certificate"]["classes"]) {
    const size_t k = cls["members"].size();
    REQUIRE(k >= 1);
    CHECK(cls["phase_exponents"].size() == k);
    CHECK(cls["c"].size() == k);
  }

  const ojson plain =
      stabtherm::verify_report(*g1.hamiltonian, g1.tableau, false);
  CHECK(plain["certificate"].is_null());

  // A non-annihilating operator reports its exact moments and no
  // certificate.
  const auto bell = StabilizerTableau::from_generators(
      2, {parse_pauli(2, "+X1 X2"), parse_pauli(2, "+Z1 Z2")});
  PauliHamiltonian sum(2);
  sum.add(parse_pauli(2, "+Z1 Z2"), Rat(1));
  sum.add(parse_pauli(2, "+X1 X2"), Rat(1));
  const ojson failed = stabtherm::verify_report(sum, bell, true);
  CHECK(failed["zero_energy"] == false);
  CHECK(failed["h_mean"] == "2");
  CHECK(failed["certificate"].is_null());
}

TEST_CASE("synthesis round trips reconstruct every draw exactly") {
  const auto g2 = stabtherm::g2_model(9);
  const ojson j = stabtherm::roundtrip_report(g2.tableau, "g2", 5, 42);
  CHECK(j["kind"] == "roundtrip");
  CHECK(j["model"] == "g2");
  CHECK(j["n"] == 9);
  CHECK(j["m"] == 2);
  CHECK(j["trials"] == 5);
  CHECK(j["seed"] == 42);
  CHECK(j["pair_count"].get<size_t>() > 0);
  CHECK(j["not_annihilating_trials"].empty());
  CHECK(j["inexact_trials"].empty());
  CHECK(j["all_exact"] == true);

  CHECK(stabtherm::roundtrip_report(g2.tableau, "g2", 5, 42).dump() ==
        j.dump());
}

TEST_CASE("support audits report the weight gap versus the pair list") {
  const auto g1 = stabtherm::g1_model(10);
  const ojson j = stabtherm::audit_report(g1.tableau, 2);
  CHECK(j["kind"] == "no_go_audit");
  CHECK(j["n"] == 10);
  CHECK(j["m"] == 2);
  CHECK(j["scan_bound"] == 5);
  CHECK(j["delta_g"] == 4);
  CHECK(j["protected_subsystem_size"] == 3);
  CHECK(j["factorization_count"].get<size_t>() > 0);
  CHECK(j["widest_factored_weight"] == 4);
  CHECK(!j["widest_example"].is_null());
  CHECK(j["support_union_bound_ok"] == true);
  CHECK(j["support_half_bound_ok"] == true);
  CHECK(j["pairs_exist"] == true);
  CHECK(j["weight_gap_blocks_pairs"] == false);
  CHECK(j["consistent"] == true);

  const ojson blocked = stabtherm::audit_report(perfect_code_state(), 1);
  CHECK(blocked["delta_g"] == 3);
  CHECK(blocked["factorization_count"] == 0);
  CHECK(blocked["pairs_exist"] == false);
  CHECK(blocked["weight_gap_blocks_pairs"] == true);
  CHECK(blocked["consistent"] == true);
  CHECK(blocked["widest_example"].is_null());
}

TEST_CASE("random-group audits are clean and thread-invariant") {
  const ojson j = stabtherm::random_group_audit(6, 10, 2, 5, 99, 1);
  CHECK(j["kind"] == "no_go_ensemble");
  CHECK(j["n"] == 6);
  CHECK(j["count"] == 10);
  CHECK(j["delta_filter"] == 5);
  uint32_t total = 0, expected_cohort = 0;
  for (const auto& [key, value] : j["delta_histogram"].items()) {
    total += value.get<uint32_t>();
    if (std::stoul(key) >= 5) expected_cohort += value.get<uint32_t>();
  }
  CHECK(total == 10);
  CHECK(j["cohort_size"] == expected_cohort);
  const bool empty_cohort = j["cohort_size"] == 0;
  CHECK(j["cohort_note"].get<std::string>().empty() != empty_cohort);
  CHECK(j["cohort_all_empty"] == true);
  const auto& u = j["unfiltered_checks"];
  CHECK(u["factorization_total"].get<uint64_t>() > 0);
  CHECK(u["union_bound_violations"] == 0);
  CHECK(u["half_bound_violations"] == 0);
  CHECK(u["weight_cap_violations"] == 0);
  CHECK(u["reciprocity_violations"] == 0);
  CHECK(u["nonempty_implies_low_delta_ok"] == true);

  CHECK(stabtherm::random_group_audit(6, 10, 2, 5, 99, 3).dump() == j.dump());
  // A different seed samples different groups.
  CHECK(stabtherm::random_group_audit(6, 10, 2, 5, 100, 1)["delta_histogram"]
            .dump() != "");
}

TEST_CASE("independent mixedness oracles agree on random graphs") {
  const ojson j = stabtherm::oracle_equivalence_report(10, 5, 2);
  CHECK(j["kind"] == "oracle_equivalence");
  CHECK(j["graphs"] == 10);
  CHECK(j["seed"] == 5);
  CHECK(j["sites_min"] == 5);
  CHECK(j["sites_max"] == 10);
  CHECK(j["regions_total"].get<uint64_t>() > 1000);
  CHECK(j["kernel_vs_graph_disagreements"] == 0);
  CHECK(j["kernel_vs_state_disagreements"] == 0);
  CHECK(j["agreement"] == true);
  CHECK(j["max_distance_when_mixed"].get<double>() < 1e-12);
  CHECK(j["min_distance_when_not_mixed"].get<double>() > 1e-3);

  CHECK(stabtherm::oracle_equivalence_report(10, 5, 4).dump() == j.dump());
}

TEST_CASE("single-sector spectrum artifacts have coherent shapes") {
  const auto g1 = stabtherm::g1_model(8);
  SectorSpec spec;
  spec.momentum = 0;
  const auto art = stabtherm::spectrum_run(*g1.hamiltonian, spec, 0.5, 10);
  const ojson& j = art.summary;
  CHECK(j["kind"] == "spectrum");
  CHECK(j["n"] == 8);
  CHECK(j["sector"]["t"] == 0);
  CHECK(j["sector"]["inversion"].is_null());
  CHECK(j["dimension"].get<size_t>() > 0);
  CHECK(j["zero_eigenvalue_present"] == true);
  CHECK(j["references"]["goe_mean"] == stabtherm::kGoeMeanR);

  CHECK(art.eigenvalues_csv.substr(0, 17) == "index,eigenvalue\n");
  CHECK(count_lines(art.eigenvalues_csv) ==
        j["dimension"].get<size_t>() + 1);
  CHECK(art.histogram_csv.substr(0, 24) == "r,empirical,goe,poisson\n");
  CHECK(count_lines(art.histogram_csv) == 11);

  CHECK_THROWS_AS(stabtherm::spectrum_run(*g1.hamiltonian, spec, 0.5, 0),
                  std::invalid_argument);
}

TEST_CASE("pooled spectra honor symmetry layout and thread counts") {
  const auto g1 = stabtherm::g1_model(8);
  const ojson j = stabtherm::pooled_spectrum_report(*g1.hamiltonian, 0.5,
                                                    20000, 1);
  CHECK(j["kind"] == "pooled_spectrum");
  CHECK(j["n"] == 8);
  CHECK(j["px"] == 1);
  CHECK(j["pz"] == 1);
  CHECK(j["skipped_conjugate_momenta"] == std::vector<uint32_t>{5, 6, 7});
  // Momenta 0..4, with inversion resolved at the self-conjugate pair.
  REQUIRE(j["sectors"].size() == 7);
  size_t r_total = 0, deg_total = 0, kernel_total = 0, empty_sectors = 0;
  double min_abs = 1e300;
  for (const auto& s : j["sectors"]) {
    r_total += s["r_count"].get<size_t>();
    deg_total += s["degenerate_gaps"].get<size_t>();
    kernel_total += s["kernel_levels_excluded"].get<size_t>();
    // A symmetry combination can hold no states on a small chain; it is
    // listed for completeness but carries no levels and no eigenvalue data.
    if (s["dimension"].get<size_t>() == 0) {
      ++empty_sectors;
      CHECK(s["min_abs_eigenvalue"].is_null());
      CHECK(s["r_count"] == 0);
      CHECK(s["levels_retained"] == 0);
    } else {
      min_abs = std::min(min_abs, s["min_abs_eigenvalue"].get<double>());
    }
  }
  CHECK(empty_sectors == 1);  // (t=0, inversion=-1) holds no states at n=8
  CHECK(j["pooled"]["r_count"] == r_total);
  CHECK(j["pooled"]["degenerate_gaps"] == deg_total);
  CHECK(j["pooled"]["kernel_levels_excluded"] == kernel_total);
  CHECK(j["min_abs_eigenvalue_over_sectors"].get<double>() == min_abs);
  CHECK(kernel_total > 0);  // the annihilated subspace is excluded, counted

  CHECK(stabtherm::pooled_spectrum_report(*g1.hamiltonian, 0.5, 20000, 4)
            .dump() == j.dump());

  // Operators without inversion or the z flip get plain momentum sectors.
  const auto g2 = stabtherm::g2_model(9);
  const ojson k = stabtherm::pooled_spectrum_report(*g2.hamiltonian, 0.5,
                                                    20000, 2);
  CHECK(k["px"] == 1);
  CHECK(k["pz"].is_null());
  CHECK(k["sectors"].size() == 5);
  CHECK(k["skipped_conjugate_momenta"] == std::vector<uint32_t>{5, 6, 7, 8});

  PauliHamiltonian lopsided(4);
  lopsided.add(parse_pauli(4, "+X1"), Rat(1));
  CHECK_THROWS_AS(stabtherm::pooled_spectrum_report(lopsided),
                  std::invalid_argument);
}

TEST_CASE("calibration reports count their samples and stay deterministic") {
  const ojson j = stabtherm::spectral_calibration_report(3, 60, 3, 200, 9, 1);
  CHECK(j["kind"] == "spectral_calibration");
  CHECK(j["seed"] == 9);
  CHECK(j["goe"]["matrices"] == 3);
  CHECK(j["goe"]["size"] == 60);
  CHECK(j["goe"]["central_fraction"] == 0.5);
  CHECK(j["goe"]["r_count"] == 84);  // 3 x (30 kept -> 28 ratios)
  CHECK(j["goe"]["target"] == stabtherm::kGoeMeanR);
  CHECK(j["goe"]["tolerance"] == 0.005);
  CHECK(j["poisson"]["batches"] == 3);
  CHECK(j["poisson"]["levels_per_batch"] == 200);
  CHECK(j["poisson"]["r_count"] == 594);  // 3 x 198
  CHECK(j["poisson"]["tolerance"] == 0.01);
  const bool both = j["goe"]["within_tolerance"].get<bool>() &&
                    j["poisson"]["within_tolerance"].get<bool>();
  CHECK(j["all_within_tolerance"] == both);

  CHECK(stabtherm::spectral_calibration_report(3, 60, 3, 200, 9, 2).dump() ==
        j.dump());
}
