/* Command-line front end.  Every subcommand resolves its inputs, calls the
   matching report builder, writes the artifact atomically into the output
   directory, and prints a one-line summary.  Exit codes: 0 success,
   2 invalid input, 3 a checked claim failed, 4 a resource limit was hit,
   1 unexpected internal error. */

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "stabtherm/graph.hpp"
#include "stabtherm/hamiltonian.hpp"
#include "stabtherm/models.hpp"
#include "stabtherm/parent.hpp"
#include "stabtherm/rational.hpp"
#include "stabtherm/runs.hpp"
#include "stabtherm/spectral.hpp"
#include "stabtherm/tableau.hpp"

namespace {

using stabtherm::ojson;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitClaimFailed = 3;
constexpr int kExitResourceLimit = 4;

/* Where artifacts go and whether the JSON is mirrored to stdout.  The
   human-readable summary goes to stdout normally, to stderr when --stdout
   claims stdout for the artifact itself. */
struct Output {
  std::filesystem::path dir = ".";
  std::string prefix;
  bool json_to_stdout = false;

  std::ostream& human() const {
    return json_to_stdout ? std::cerr : std::cout;
  }

  std::filesystem::path write(const std::string& name,
                              const std::string& content) const {
    std::filesystem::create_directories(dir);
    const std::filesystem::path final_path = dir / (prefix + name);
    const std::filesystem::path tmp_path =
        dir / (prefix + name + ".tmp-" + std::to_string(::getpid()));
    {
      std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
      if (!out) {
        throw std::invalid_argument("cannot write " + tmp_path.string());
      }
      out << content;
      if (!out.flush()) {
        throw std::invalid_argument("short write to " + tmp_path.string());
      }
    }
    std::filesystem::rename(tmp_path, final_path);
    return final_path;
  }

  void emit_json(const std::string& name, const ojson& j) const {
    const std::string text = j.dump(2) + "\n";
    const auto path = write(name, text);
    if (json_to_stdout) {
      std::cout << text;
    }
    human() << "wrote " << path.string() << "\n";
  }
};

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::invalid_argument("cannot read " + path);
  }
  std::ostringstream body;
  body << in.rdbuf();
  return body.str();
}

unsigned resolve_threads(unsigned threads) {
  if (threads != 0) {
    return threads;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/* Shared model/state selection: a named bundle or a file-backed state.
   Exactly one of --model, --tableau, --graph must be chosen. */
struct ModelSel {
  std::string model;
  uint32_t n = 0;
  std::string j = "1";
  std::string j1 = "1";
  std::string j2 = "1";
  std::string j3 = "1";
  std::string tableau_file;
  std::string graph_file;
};

void add_model_options(CLI::App* cmd, ModelSel& sel, bool named_only = false,
                       bool n_standalone = false) {
  auto* model = cmd->add_option("--model", sel.model,
                                "named bundle: eap, g1, g2, or cluster1d")
                    ->check(CLI::IsMember({"eap", "g1", "g2", "cluster1d"}));
  auto* n = cmd->add_option("--n", sel.n, "number of sites for --model");
  if (!n_standalone) {
    n->needs(model);
  }
  model->needs(n);
  cmd->add_option("--j", sel.j, "g1 coupling, a rational like 1 or -2/3")
      ->needs(model);
  cmd->add_option("--j1", sel.j1, "g2 coupling j1 (rational)")->needs(model);
  cmd->add_option("--j2", sel.j2, "g2 coupling j2 (rational)")->needs(model);
  cmd->add_option("--j3", sel.j3, "g2 coupling j3 (rational)")->needs(model);
  if (named_only) {
    model->required();
    return;
  }
  auto* tab = cmd->add_option("--tableau", sel.tableau_file,
                              "stabilizer generator file (N=<n> header)")
                  ->check(CLI::ExistingFile);
  auto* gra = cmd->add_option("--graph", sel.graph_file,
                              "graph edge-list file (N=<n> header)")
                  ->check(CLI::ExistingFile);
  tab->excludes(model)->excludes(gra);
  gra->excludes(model);
}

std::string file_stem(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

stabtherm::ModelBundle resolve_bundle(const ModelSel& sel) {
  const int sources = int(!sel.model.empty()) + int(!sel.tableau_file.empty()) +
                      int(!sel.graph_file.empty());
  if (sources != 1) {
    throw std::invalid_argument(
        "choose exactly one of --model, --tableau, --graph");
  }
  if (sel.model == "eap") {
    return stabtherm::eap_model(sel.n);
  }
  if (sel.model == "g1") {
    return stabtherm::g1_model(sel.n, stabtherm::parse_rational(sel.j));
  }
  if (sel.model == "g2") {
    return stabtherm::g2_model(sel.n, stabtherm::parse_rational(sel.j1),
                               stabtherm::parse_rational(sel.j2),
                               stabtherm::parse_rational(sel.j3));
  }
  if (sel.model == "cluster1d") {
    return stabtherm::cluster_1d_model(sel.n);
  }
  if (!sel.tableau_file.empty()) {
    auto t = stabtherm::StabilizerTableau::from_file_text(
        read_text_file(sel.tableau_file));
    const uint32_t n = t.num_sites();
    return stabtherm::ModelBundle{.name = file_stem(sel.tableau_file),
                                  .n = n,
                                  .tableau = std::move(t),
                                  .graph = {},
                                  .hamiltonian = {},
                                  .claims = {}};
  }
  auto g = stabtherm::graph_from_file_text(read_text_file(sel.graph_file));
  const uint32_t n = g.num_sites();
  auto t = stabtherm::graph_to_stabilizer(g);
  return stabtherm::ModelBundle{.name = file_stem(sel.graph_file),
                                .n = n,
                                .tableau = std::move(t),
                                .graph = std::move(g),
                                .hamiltonian = {},
                                .claims = {}};
}

/* Hamiltonian for verify/spectrum: an explicit file wins; otherwise the
   bundle must carry a parent of its own. */
stabtherm::PauliHamiltonian resolve_hamiltonian(
    const stabtherm::ModelBundle& bundle, const std::string& ham_file) {
  if (!ham_file.empty()) {
    return stabtherm::PauliHamiltonian::from_file_text(
        read_text_file(ham_file));
  }
  if (bundle.hamiltonian) {
    return *bundle.hamiltonian;
  }
  throw std::invalid_argument(
      "no Hamiltonian: pass --hamiltonian FILE or pick a model that bundles "
      "one (g1, g2)");
}

std::vector<uint32_t> parse_sites(const std::string& text) {
  std::vector<uint32_t> sites;
  std::stringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(tok, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad site list entry: '" + tok + "'");
    }
    if (used != tok.size() || v == 0 || v > 0xffffffffUL) {
      throw std::invalid_argument("bad site list entry: '" + tok + "'");
    }
    sites.push_back(uint32_t(v));
  }
  if (sites.empty()) {
    throw std::invalid_argument("empty site list");
  }
  return sites;
}

int parse_sign(const std::string& value, const std::string& key) {
  if (value == "1" || value == "+1") {
    return 1;
  }
  if (value == "-1") {
    return -1;
  }
  throw std::invalid_argument("sector key " + key + " takes +1 or -1, got '" +
                              value + "'");
}

/* "t=1,p=1,px=1,pz=-1" -> SectorSpec.  Keys: t (momentum index),
   p (inversion), px, pz (spin flips); each at most once. */
stabtherm::SectorSpec parse_sector(const std::string& text) {
  stabtherm::SectorSpec spec;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    const size_t eq = part.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("sector entry '" + part +
                                  "' is not key=value");
    }
    const std::string key = part.substr(0, eq);
    const std::string value = part.substr(eq + 1);
    if (key == "t") {
      if (spec.momentum) {
        throw std::invalid_argument("duplicate sector key t");
      }
      size_t used = 0;
      unsigned long t = 0;
      try {
        t = std::stoul(value, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad momentum value '" + value + "'");
      }
      if (used != value.size()) {
        throw std::invalid_argument("bad momentum value '" + value + "'");
      }
      spec.momentum = uint32_t(t);
    } else if (key == "p") {
      if (spec.inversion) {
        throw std::invalid_argument("duplicate sector key p");
      }
      spec.inversion = parse_sign(value, key);
    } else if (key == "px") {
      if (spec.spin_flip_x) {
        throw std::invalid_argument("duplicate sector key px");
      }
      spec.spin_flip_x = parse_sign(value, key);
    } else if (key == "pz") {
      if (spec.spin_flip_z) {
        throw std::invalid_argument("duplicate sector key pz");
      }
      spec.spin_flip_z = parse_sign(value, key);
    } else {
      throw std::invalid_argument("unknown sector key '" + key +
                                  "' (use t, p, px, pz)");
    }
  }
  return spec;
}

std::string sites_text(const std::vector<uint32_t>& sites) {
  std::string out = "{";
  for (size_t i = 0; i < sites.size(); ++i) {
    out += (i ? "," : "") + std::to_string(sites[i]);
  }
  return out + "}";
}

int run_mite(const Output& out, const ModelSel& sel, unsigned threads,
             std::optional<uint32_t> k, std::optional<uint32_t> l,
             const std::string& sites_arg, uint32_t max_weight_sites) {
  const auto bundle = resolve_bundle(sel);
  stabtherm::MiteRequest req;
  const int picks = int(k.has_value()) + int(l.has_value()) +
                    int(!sites_arg.empty());
  if (picks != 1) {
    throw std::invalid_argument("choose exactly one of --k, --l, --sites");
  }
  std::string what;
  if (k) {
    req.kind = stabtherm::MiteRequest::Kind::kKBody;
    req.parameter = *k;
    what = "k=" + std::to_string(*k);
  } else if (l) {
    req.kind = stabtherm::MiteRequest::Kind::kLLocal;
    req.parameter = *l;
    what = "l=" + std::to_string(*l);
  } else {
    req.kind = stabtherm::MiteRequest::Kind::kSubsystem;
    req.sites = parse_sites(sites_arg);
    what = "sites " + sites_text(req.sites);
  }
  const ojson j = stabtherm::mite_report(bundle.tableau, req, threads,
                                         max_weight_sites);
  out.emit_json("mite.json", j);
  if (j["holds"].get<bool>()) {
    out.human() << bundle.name << " " << what << ": maximally mixed over "
                << j["regions_confirmed"].get<uint64_t>() << " region(s)\n";
  } else {
    out.human() << bundle.name << " " << what << ": fails at sites "
                << sites_text(
                       j["witness"]["sites"].get<std::vector<uint32_t>>())
                << " via " << j["witness"]["element"].get<std::string>()
                << "\n";
  }
  return kExitOk;
}

int run_synth(const Output& out, const ModelSel& sel, uint32_t m,
              uint64_t seed) {
  const auto bundle = resolve_bundle(sel);
  const auto result =
      stabtherm::synthesize_orbit_hamiltonian(bundle.tableau, m, seed);
  out.emit_json("synthesis.json", result.provenance);
  const auto path = out.write("synth_hamiltonian.txt",
                              result.hamiltonian.to_file_text());
  out.human() << "wrote " << path.string() << "\n";
  out.human() << bundle.name << ": " << result.hamiltonian.num_terms()
              << "-term parent, locality "
              << result.hamiltonian.locality() << ", "
              << result.provenance["orbit_count"].get<size_t>()
              << " orbit(s), seed " << seed << "\n";
  return kExitOk;
}

int run_verify(const Output& out, const ModelSel& sel,
               const std::string& ham_file, bool with_certificate) {
  const auto bundle = resolve_bundle(sel);
  const auto h = resolve_hamiltonian(bundle, ham_file);
  const ojson j = stabtherm::verify_report(h, bundle.tableau,
                                           with_certificate);
  out.emit_json("verify.json", j);
  const bool ok = j["zero_energy"].get<bool>();
  if (ok) {
    out.human() << bundle.name
                << ": exact zero-energy eigenstate (<H> = <H^2> = 0)\n";
    if (with_certificate) {
      out.human() << "certificate: "
                  << j["certificate"]["class_count"].get<size_t>()
                  << " class(es), reconstruction exact = "
                  << (j["certificate"]["reconstruction_exact"].get<bool>()
                          ? "true"
                          : "false")
                  << "\n";
    }
  } else {
    out.human() << bundle.name << ": NOT annihilated; <H> = "
                << j["h_mean"].get<std::string>() << ", <H^2> = "
                << j["h2_mean"].get<std::string>() << "\n";
  }
  if (!ok) {
    return kExitClaimFailed;
  }
  if (with_certificate &&
      !j["certificate"]["reconstruction_exact"].get<bool>()) {
    return kExitClaimFailed;
  }
  return kExitOk;
}

int run_spectrum(const Output& out, const ModelSel& sel,
                 const std::string& ham_file, const std::string& sector_arg,
                 bool pooled, double central_fraction, uint32_t bins,
                 size_t dim_limit, unsigned threads) {
  const auto bundle = resolve_bundle(sel);
  const auto h = resolve_hamiltonian(bundle, ham_file);
  if (pooled == !sector_arg.empty()) {
    throw std::invalid_argument("choose exactly one of --sector, --pooled");
  }
  if (pooled) {
    const ojson j = stabtherm::pooled_spectrum_report(h, central_fraction,
                                                      dim_limit, threads);
    out.emit_json("pooled.json", j);
    const auto& mean = j["pooled"]["mean_r"];
    out.human() << bundle.name << " pooled: "
                << j["pooled"]["r_count"].get<uint64_t>()
                << " gap ratios, mean r = "
                << (mean.is_null() ? std::string("n/a")
                                   : std::to_string(mean.get<double>()))
                << ", degenerate gaps "
                << j["pooled"]["degenerate_gaps"].get<uint64_t>() << "\n";
    return kExitOk;
  }
  const auto spec = parse_sector(sector_arg);
  const auto art = stabtherm::spectrum_run(h, spec, central_fraction, bins,
                                           dim_limit);
  out.emit_json("spectrum.json", art.summary);
  const auto ev_path = out.write("eigenvalues.csv", art.eigenvalues_csv);
  const auto hist_path = out.write("histogram.csv", art.histogram_csv);
  out.human() << "wrote " << ev_path.string() << "\n";
  out.human() << "wrote " << hist_path.string() << "\n";
  const auto& mean = art.summary["mean_r"];
  out.human() << bundle.name << " sector " << sector_arg << ": dimension "
              << art.summary["dimension"].get<size_t>() << ", mean r = "
              << (mean.is_null() ? std::string("n/a")
                                 : std::to_string(mean.get<double>()))
              << "\n";
  return kExitOk;
}

int run_audit(const Output& out, const ModelSel& sel, bool ensemble,
              uint32_t count, uint32_t m, uint32_t delta_filter,
              uint64_t seed, unsigned threads) {
  if (ensemble) {
    if (!sel.model.empty() || !sel.tableau_file.empty() ||
        !sel.graph_file.empty()) {
      throw std::invalid_argument(
          "--ensemble draws its own groups; drop --model/--tableau/--graph");
    }
    const uint32_t n = sel.n;
    if (n == 0) {
      throw std::invalid_argument("--ensemble needs --n");
    }
    const ojson j = stabtherm::random_group_audit(n, count, m, delta_filter,
                                                  seed, threads);
    out.emit_json("ensemble.json", j);
    const auto& checks = j["unfiltered_checks"];
    const bool ok =
        j["cohort_all_empty"].get<bool>() &&
        checks["union_bound_violations"].get<uint64_t>() == 0 &&
        checks["half_bound_violations"].get<uint64_t>() == 0 &&
        checks["weight_cap_violations"].get<uint64_t>() == 0 &&
        checks["reciprocity_violations"].get<uint64_t>() == 0 &&
        checks["nonempty_implies_low_delta_ok"].get<bool>();
    out.human() << "ensemble n=" << n << " count=" << count << ": cohort "
                << j["cohort_size"].get<uint64_t>() << ", "
                << checks["factorization_total"].get<uint64_t>()
                << " factorizations checked, "
                << (ok ? "no violations" : "VIOLATIONS FOUND") << "\n";
    return ok ? kExitOk : kExitClaimFailed;
  }
  const auto bundle = resolve_bundle(sel);
  const ojson j = stabtherm::audit_report(bundle.tableau, m);
  out.emit_json("audit.json", j);
  const bool ok = j["consistent"].get<bool>();
  out.human() << bundle.name << " m=" << m << ": delta_g = "
              << (j["delta_g"].is_null()
                      ? std::string("n/a")
                      : std::to_string(j["delta_g"].get<uint32_t>()))
              << ", " << j["factorization_count"].get<uint64_t>()
              << " factorization(s), "
              << (ok ? "consistent" : "INCONSISTENT") << "\n";
  return ok ? kExitOk : kExitClaimFailed;
}

int run_roundtrip(const Output& out, const ModelSel& sel, uint32_t trials,
                  uint64_t seed) {
  const auto bundle = resolve_bundle(sel);
  const ojson j = stabtherm::roundtrip_report(bundle.tableau, bundle.name,
                                              trials, seed);
  out.emit_json("roundtrip.json", j);
  const bool ok = j["all_exact"].get<bool>();
  out.human() << bundle.name << ": " << trials
              << " synthesize/decompose/reconstruct trial(s), "
              << (ok ? "all exact" : "MISMATCHES FOUND") << "\n";
  return ok ? kExitOk : kExitClaimFailed;
}

int run_crosscheck(const Output& out, uint32_t graphs, uint64_t seed,
                   unsigned threads) {
  const ojson j = stabtherm::oracle_equivalence_report(graphs, seed, threads);
  out.emit_json("crosscheck.json", j);
  const bool ok = j["agreement"].get<bool>();
  out.human() << graphs << " random graph states, "
              << j["regions_total"].get<uint64_t>() << " regions: "
              << (ok ? "group, kernel, and density-matrix checks agree"
                     : "DISAGREEMENT FOUND")
              << "\n";
  return ok ? kExitOk : kExitClaimFailed;
}

int run_calibrate(const Output& out, uint32_t goe_matrices, uint32_t goe_size,
                  uint32_t poisson_batches, uint32_t poisson_levels,
                  uint64_t seed, unsigned threads) {
  const ojson j = stabtherm::spectral_calibration_report(
      goe_matrices, goe_size, poisson_batches, poisson_levels, seed, threads);
  out.emit_json("calibration.json", j);
  const bool ok = j["all_within_tolerance"].get<bool>();
  out.human() << "GOE mean r = " << j["goe"]["mean_r"].get<double>()
              << " (target " << j["goe"]["target"].get<double>()
              << "), Poisson mean r = "
              << j["poisson"]["mean_r"].get<double>() << " (target "
              << j["poisson"]["target"].get<double>() << "): "
              << (ok ? "within tolerance" : "OUT OF TOLERANCE") << "\n";
  return ok ? kExitOk : kExitClaimFailed;
}

int run_models_list(const Output& out) {
  out.human()
      << "eap        even n >= 4   Bell pairs on sites (i, i+n/2); 1-body "
         "regions mixed, 2-body not\n"
      << "g1         even n >= 8   ladder graph state; 3-body regions mixed, "
         "4-body not; parent J*sum(Z_i Z_{i+3} - X_i X_{i+1})\n"
      << "g2         odd n >= 5    circulant graph state; 2-body regions "
         "mixed, 3-body not; two-local j1/j2/j3 parent family\n"
      << "cluster1d  n >= 3        cycle cluster state; 2-site windows mixed "
         "(n >= 5), 3-site windows not; no bundled parent\n";
  return kExitOk;
}

int run_models_export(const Output& out, const ModelSel& sel) {
  const auto bundle = resolve_bundle(sel);
  const std::string base =
      bundle.name + "_n" + std::to_string(bundle.n) + "_";
  auto p = out.write(base + "tableau.txt", bundle.tableau.to_file_text());
  out.human() << "wrote " << p.string() << "\n";
  if (bundle.graph) {
    p = out.write(base + "graph.txt",
                  stabtherm::graph_to_file_text(*bundle.graph));
    out.human() << "wrote " << p.string() << "\n";
    p = out.write(base + "graph.dot",
                  stabtherm::graph_to_dot(*bundle.graph, bundle.name));
    out.human() << "wrote " << p.string() << "\n";
  }
  if (bundle.hamiltonian) {
    p = out.write(base + "hamiltonian.txt",
                  bundle.hamiltonian->to_file_text());
    out.human() << "wrote " << p.string() << "\n";
  }
  return kExitOk;
}

int run_models_check(const Output& out, const ModelSel& sel,
                     unsigned threads) {
  const auto bundle = resolve_bundle(sel);
  if (bundle.claims.empty()) {
    throw std::invalid_argument("input carries no checkable claims");
  }
  const ojson j = stabtherm::claims_report(bundle, threads);
  out.emit_json("claims.json", j);
  size_t passed = 0;
  for (const auto& row : j["claims"]) {
    if (row["passed"].get<bool>()) {
      ++passed;
    } else {
      out.human() << "FAILED: " << row["label"].get<std::string>() << " ("
                  << row["detail"].get<std::string>() << ")\n";
    }
  }
  out.human() << bundle.name << " n=" << bundle.n << ": " << passed << "/"
              << j["claims"].size() << " claims passed\n";
  return j["all_passed"].get<bool>() ? kExitOk : kExitClaimFailed;
}

int fail_with(int code, const std::string& type, const std::string& message) {
  ojson j;
  j["error"]["type"] = type;
  j["error"]["message"] = message;
  j["error"]["exit_code"] = code;
  std::cout << j.dump(2) << "\n";
  std::cerr << "error: " << message << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "stabtherm: stabilizer eigenstates that look maximally mixed on small "
      "regions, their exact parent Hamiltonians, and the level statistics "
      "of those parents"};
  app.set_version_flag("--version", "stabtherm 1.0.0");
  app.require_subcommand(1);

  Output out;
  std::string out_dir = ".";
  unsigned threads = 1;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_dir, "output directory for artifacts")
        ->envname("STABTHERM_OUT")
        ->capture_default_str();
    cmd->add_option("--prefix", out.prefix,
                    "filename prefix for every artifact");
    cmd->add_flag("--stdout", out.json_to_stdout,
                  "print the JSON artifact to stdout as well");
    cmd->add_option("--threads", threads,
                    "worker threads; 0 means all hardware threads")
        ->capture_default_str();
  };

  ModelSel sel;
  uint64_t seed = 1;
  uint32_t m = 2;

  // mite
  auto* mite = app.add_subcommand(
      "mite", "check that every region of one family is maximally mixed");
  add_common(mite);
  add_model_options(mite, sel);
  std::optional<uint32_t> opt_k;
  std::optional<uint32_t> opt_l;
  std::string sites_arg;
  uint32_t max_weight_sites = 20;
  mite->add_option("--k", opt_k, "scan all k-site subsets");
  mite->add_option("--l", opt_l, "scan all l-site contiguous windows");
  mite->add_option("--sites", sites_arg,
                   "one explicit subsystem, e.g. 1,2,5");
  mite->add_option("--max-weight-sites", max_weight_sites,
                   "largest n for which the exact distance is computed")
      ->capture_default_str();

  // synth
  auto* synth = app.add_subcommand(
      "synth", "draw a random translation-invariant parent Hamiltonian");
  add_common(synth);
  add_model_options(synth, sel);
  synth->add_option("--m", m, "support cap: factors act on at most m sites")
      ->capture_default_str();
  synth->add_option("--seed", seed, "coefficient stream seed")
      ->capture_default_str();

  // verify
  auto* verify = app.add_subcommand(
      "verify", "check that a Hamiltonian annihilates the state exactly");
  add_common(verify);
  add_model_options(verify, sel);
  std::string ham_file;
  bool with_certificate = false;
  verify->add_option("--hamiltonian", ham_file,
                     "Hamiltonian file (otherwise the model's bundled one)")
      ->check(CLI::ExistingFile);
  verify->add_flag("--certificate", with_certificate,
                   "also decompose into reduced-weight classes and "
                   "reconstruct");

  // spectrum
  auto* spectrum = app.add_subcommand(
      "spectrum", "symmetry-resolved eigenvalues and gap-ratio statistics");
  add_common(spectrum);
  add_model_options(spectrum, sel);
  std::string sector_arg;
  bool pooled = false;
  double central_fraction = 0.5;
  uint32_t bins = 20;
  size_t dim_limit = 20000;
  spectrum->add_option("--hamiltonian", ham_file,
                       "Hamiltonian file (otherwise the model's bundled one)")
      ->check(CLI::ExistingFile);
  spectrum->add_option("--sector", sector_arg,
                       "one sector, e.g. t=1 or t=0,p=1,px=1,pz=1");
  spectrum->add_flag("--pooled", pooled,
                     "pool gap ratios over all distinct symmetry sectors");
  spectrum->add_option("--central", central_fraction,
                       "central fraction of each sector's spectrum to keep")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  spectrum->add_option("--bins", bins, "histogram bin count")
      ->capture_default_str();
  spectrum->add_option("--dim-limit", dim_limit,
                       "largest sector dimension to diagonalize")
      ->capture_default_str();

  // audit
  auto* audit = app.add_subcommand(
      "audit", "factorization existence vs the group's minimum weight");
  add_common(audit);
  add_model_options(audit, sel, /*named_only=*/false, /*n_standalone=*/true);
  bool ensemble = false;
  uint32_t ens_count = 100;
  uint32_t delta_filter = 5;
  audit->add_option("--m", m, "support cap for factor pairs")
      ->capture_default_str();
  audit->add_flag("--ensemble", ensemble,
                  "audit many random maximal stabilizer groups instead "
                  "(uses --n for their size)");
  audit->add_option("--count", ens_count,
                    "number of random groups (with --ensemble)")
      ->capture_default_str();
  audit->add_option("--delta-filter", delta_filter,
                    "report the cohort with minimum weight >= this")
      ->capture_default_str();
  audit->add_option("--seed", seed, "random group stream seed")
      ->capture_default_str();

  // roundtrip
  auto* roundtrip = app.add_subcommand(
      "roundtrip",
      "synthesize -> decompose -> reconstruct, demanding exact equality");
  add_common(roundtrip);
  add_model_options(roundtrip, sel);
  uint32_t trials = 10;
  roundtrip->add_option("--trials", trials, "independent coefficient draws")
      ->capture_default_str();
  roundtrip->add_option("--seed", seed, "coefficient stream seed")
      ->capture_default_str();

  // crosscheck
  auto* crosscheck = app.add_subcommand(
      "crosscheck",
      "compare group, graph-kernel, and density-matrix mixedness checks on "
      "random graph states");
  add_common(crosscheck);
  uint32_t graphs = 100;
  crosscheck->add_option("--graphs", graphs, "number of random graphs")
      ->capture_default_str();
  crosscheck->add_option("--seed", seed, "graph stream seed")
      ->capture_default_str();

  // calibrate
  auto* calibrate = app.add_subcommand(
      "calibrate",
      "gap-ratio pipeline against GOE matrices and Poisson level sets");
  add_common(calibrate);
  uint32_t goe_matrices = 20;
  uint32_t goe_size = 1000;
  uint32_t poisson_batches = 20;
  uint32_t poisson_levels = 5000;
  calibrate->add_option("--goe-matrices", goe_matrices,
                        "number of GOE draws")
      ->capture_default_str();
  calibrate->add_option("--goe-size", goe_size, "GOE matrix dimension")
      ->capture_default_str();
  calibrate->add_option("--poisson-batches", poisson_batches,
                        "number of Poisson level batches")
      ->capture_default_str();
  calibrate->add_option("--poisson-levels", poisson_levels,
                        "levels per Poisson batch")
      ->capture_default_str();
  calibrate->add_option("--seed", seed, "sampling seed")
      ->capture_default_str();

  // models
  auto* models = app.add_subcommand("models", "named model bundles");
  models->require_subcommand(1);
  auto* models_list =
      models->add_subcommand("list", "one line per available bundle");
  add_common(models_list);
  auto* models_export = models->add_subcommand(
      "export", "write a bundle's tableau/graph/Hamiltonian files");
  add_common(models_export);
  add_model_options(models_export, sel, /*named_only=*/true);
  auto* models_check = models->add_subcommand(
      "check", "run every claim bundled with a model");
  add_common(models_check);
  add_model_options(models_check, sel, /*named_only=*/true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  out.dir = out_dir;
  const unsigned worker_threads = resolve_threads(threads);

  try {
    if (mite->parsed()) {
      return run_mite(out, sel, worker_threads, opt_k, opt_l, sites_arg,
                      max_weight_sites);
    }
    if (synth->parsed()) {
      return run_synth(out, sel, m, seed);
    }
    if (verify->parsed()) {
      return run_verify(out, sel, ham_file, with_certificate);
    }
    if (spectrum->parsed()) {
      return run_spectrum(out, sel, ham_file, sector_arg, pooled,
                          central_fraction, bins, dim_limit, worker_threads);
    }
    if (audit->parsed()) {
      return run_audit(out, sel, ensemble, ens_count, m, delta_filter, seed,
                       worker_threads);
    }
    if (roundtrip->parsed()) {
      return run_roundtrip(out, sel, trials, seed);
    }
    if (crosscheck->parsed()) {
      return run_crosscheck(out, graphs, seed, worker_threads);
    }
    if (calibrate->parsed()) {
      return run_calibrate(out, goe_matrices, goe_size, poisson_batches,
                           poisson_levels, seed, worker_threads);
    }
    if (models_list->parsed()) {
      return run_models_list(out);
    }
    if (models_export->parsed()) {
      return run_models_export(out, sel);
    }
    if (models_check->parsed()) {
      return run_models_check(out, sel, worker_threads);
    }
    throw std::logic_error("no subcommand dispatched");
  } catch (const stabtherm::DimensionLimitError& e) {
    return fail_with(kExitResourceLimit, "dimension_limit", e.what());
  } catch (const stabtherm::RationalOverflowError& e) {
    return fail_with(kExitResourceLimit, "rational_overflow", e.what());
  } catch (const stabtherm::TableauParseError& e) {
    return fail_with(kExitInvalid, "tableau_parse_error", e.what());
  } catch (const stabtherm::GraphParseError& e) {
    return fail_with(kExitInvalid, "graph_parse_error", e.what());
  } catch (const stabtherm::HamiltonianParseError& e) {
    return fail_with(kExitInvalid, "hamiltonian_parse_error", e.what());
  } catch (const stabtherm::NotAnnihilatingError& e) {
    return fail_with(kExitClaimFailed, "not_annihilating", e.what());
  } catch (const stabtherm::NonHermitianResultError& e) {
    return fail_with(kExitInvalid, "non_hermitian_result", e.what());
  } catch (const std::invalid_argument& e) {
    return fail_with(kExitInvalid, "invalid_argument", e.what());
  } catch (const std::logic_error& e) {
    return fail_with(kExitInvalid, "logic_error", e.what());
  } catch (const std::exception& e) {
    return fail_with(kExitInternal, "internal_error", e.what());
  }
}
