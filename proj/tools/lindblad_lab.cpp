// lindblad-lab — deterministic command-line front end.
//
// Commands: divergence, lindblad-spectrum, fermion, boson, g0-table,
// casimir, verify. Identical (command, parameters, seed) produce
// byte-identical output; timing goes to stderr only. Exit codes: 0 pass,
// 1 numerical-check failure, 2 usage error. LINDBLAD_LAB_THREADS caps the
// worker count. File formats are documented in docs/formats.md.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <unsupported/Eigen/MatrixFunctions>
#include <vector>

#include <CLI11.hpp>

#include "qms/boson.hpp"
#include "qms/casimir.hpp"
#include "qms/fermion.hpp"
#include "qms/lindblad.hpp"
#include "qms/parallel.hpp"
#include "qms/rootsys.hpp"
#include "qms/sampling.hpp"
#include "qms/serialize.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

using nlohmann::json;
using namespace qms;

struct Options {
  std::uint64_t seed = 0;
  std::string output;  // empty = stdout
  std::string format = "json";
  bool strict = false;
};

// All numerical checks run at these tolerances; --strict halves them.
struct Tolerances {
  double divergence = 1e-10;
  double spectral = 1e-8;
  double symbolic = 1e-10;
  double bound_slack = 1e-9;

  void halve() {
    divergence /= 2;
    spectral /= 2;
    symbolic /= 2;
    bound_slack /= 2;
  }

  json to_json() const {
    return {{"divergence", divergence},
            {"spectral", spectral},
            {"symbolic", symbolic},
            {"bound_slack", bound_slack}};
  }
};

void flatten(const json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(),
              out);
  } else if (j.is_array()) {
    for (size_t i = 0; i < j.size(); ++i)
      flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else if (j.is_number_float()) {
    out.push_back({prefix, format_double(j.get<double>())});
  } else if (j.is_string()) {
    out.push_back({prefix, j.get<std::string>()});
  } else {
    out.push_back({prefix, j.dump()});
  }
}

std::string render(const json& report, const std::string& format) {
  if (format == "json") return dump_json(report);
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  std::ostringstream os;
  if (format == "csv") {
    os << "key,value\n";
    for (const auto& [k, v] : rows) os << k << "," << v << "\n";
  } else {  // md
    os << "| key | value |\n|---|---|\n";
    for (const auto& [k, v] : rows) os << "| " << k << " | " << v << " |\n";
  }
  return os.str();
}

int emit(const json& report, const Options& opt, bool passed) {
  std::string text = render(report, opt.format);
  if (opt.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(opt.output, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << opt.output << "\n";
      return 2;
    }
    out << text;
  }
  return passed ? 0 : 1;
}

json base_report(const std::string& command, const Options& opt,
                 const Tolerances& tols, const json& inputs) {
  json report;
  report["command"] = command;
  report["library_version"] = kVersion;
  report["seed"] = opt.seed;
  report["strict"] = opt.strict;
  report["inputs"] = inputs;
  report["tolerances"] = tols.to_json();
  return report;
}

// ---- decay curves ----------------------------------------------------------

struct CurvePoint {
  double t, bound, sampled_sup_dtr;
};

// Dense dual evolution of seeded random states; one row per time point.
std::vector<CurvePoint> sample_curve(
    const LindbladSpec& spec, const DensityState& sigma,
    const std::vector<double>& times,
    const std::function<double(double)>& bound_fn, std::uint64_t seed,
    int samples) {
  Superoperator dual = build_dual(spec);
  Rng rng(seed);
  std::vector<DensityState> states;
  for (int k = 0; k < samples; ++k)
    states.push_back(random_state(rng, spec.dim));
  std::vector<CurvePoint> curve;
  for (double t : times) {
    Eigen::MatrixXcd e = (t * dual.matrix).exp();
    double sup = 0.0;
    for (const DensityState& rho : states)
      sup = std::max(sup, trace_distance(evolve_state(e, rho), sigma));
    curve.push_back({t, bound_fn(t), sup});
  }
  return curve;
}

std::string curve_csv(const std::vector<CurvePoint>& curve) {
  std::ostringstream os;
  os << "t,bound,sampled_sup_dtr\n";
  for (const CurvePoint& p : curve)
    os << format_double(p.t) << "," << format_double(p.bound) << ","
       << format_double(p.sampled_sup_dtr) << "\n";
  return os.str();
}

json curve_json(const std::vector<CurvePoint>& curve) {
  json rows = json::array();
  for (const CurvePoint& p : curve)
    rows.push_back({{"t", p.t},
                    {"bound", p.bound},
                    {"sampled_sup_dtr", p.sampled_sup_dtr}});
  return rows;
}

bool curve_valid(const std::vector<CurvePoint>& curve) {
  for (size_t i = 0; i < curve.size(); ++i) {
    if (curve[i].sampled_sup_dtr > curve[i].bound) return false;
    if (i > 0 && curve[i].bound > curve[i - 1].bound + 1e-15) return false;
  }
  return true;
}

std::vector<double> linspace(double t0, double t1, int steps) {
  std::vector<double> ts;
  for (int k = 0; k < steps; ++k)
    ts.push_back(t0 + (t1 - t0) * k / std::max(1, steps - 1));
  return ts;
}

// ---- divergence ------------------------------------------------------------

int run_divergence(const Options& opt, const Tolerances& tols, int dim,
                   int pairs) {
  json inputs = {{"dim", dim}, {"pairs", pairs}};
  Rng rng(opt.seed);
  double worst_tr = 0.0, worst_ent = 0.0;
  for (int k = 0; k < pairs; ++k) {
    DensityState rho = random_state(rng, dim);
    DensityState sigma = random_state(rng, dim);
    GnsSpace space = make_gns_space(sigma);
    double d = trace_distance(rho, sigma);
    double chi2 = chi2_divergence(rho, space);
    double ent = relative_entropy(rho, sigma);
    worst_tr = std::max(worst_tr, 4.0 * d * d - chi2);
    worst_ent = std::max(worst_ent, ent - chi2);
  }
  bool passed = worst_tr <= tols.divergence && worst_ent <= tols.divergence;
  json report = base_report("divergence", opt, tols, inputs);
  report["results"] = {{"max_excess_4dtr2_over_chi2", worst_tr},
                       {"max_excess_entropy_over_chi2", worst_ent},
                       {"passed", passed}};
  return emit(report, opt, passed);
}

// ---- lindblad-spectrum ------------------------------------------------------

int run_spectrum(const Options& opt, const Tolerances& tols,
                 const std::string& spec_file, const std::string& state_file) {
  std::ifstream sf(spec_file), stf(state_file);
  if (!sf || !stf) {
    std::cerr << "error: cannot read input files\n";
    return 2;
  }
  LindbladSpec spec = spec_from_json(json::parse(sf));
  DensityState sigma = make_density(operator_from_json(json::parse(stf)));
  json inputs = {{"spec_file", spec_file}, {"state_file", state_file}};
  GnsSpace space = make_gns_space(sigma);
  SpectralBasis basis = spectral_decomposition(
      build_generator(spec), space, tols.spectral);
  DetailedBalanceReport db = check_detailed_balance(spec, sigma);
  json report = base_report("lindblad-spectrum", opt, tols, inputs);
  report["results"] = {
      {"eigenvalues", basis.eigenvalues},
      {"ergodic", check_ergodic(spec)},
      {"detailed_balance_residual", db.residual_sufficient},
      {"detailed_balance_necessary_residual", db.residual_necessary}};
  if (check_ergodic(spec))
    report["results"]["gap"] = spectral_gap(basis);
  return emit(report, opt, true);
}

// ---- fermion ----------------------------------------------------------------

int run_fermion(const Options& opt, const Tolerances& tols, int N, double beta,
                std::vector<double> omegas, double t, int samples, bool curve,
                double tmax, int steps) {
  if (omegas.empty()) omegas.assign(N, 1.0);
  FermionSystem sys{N, beta, omegas};
  validate(sys);
  json inputs = {{"N", N},       {"beta", beta},       {"omegas", omegas},
                 {"t", t},       {"samples", samples}, {"curve", curve},
                 {"tmax", tmax}, {"steps", steps}};
  LindbladSpec spec = build_fermi_generator(sys);
  DensityState sigma = fermi_state(sys);
  FermiEigensystem es = fermi_eigensystem(sys);

  // Sampled decay at the requested time against the closed-form bound.
  Superoperator dual = build_dual(spec);
  Eigen::MatrixXcd e = (t * dual.matrix).exp();
  Rng rng(opt.seed);
  double sup4d2 = 0.0;
  for (int k = 0; k < samples; ++k) {
    DensityState rho = random_state(rng, spec.dim);
    double d = trace_distance(evolve_state(e, rho), sigma);
    sup4d2 = std::max(sup4d2, 4.0 * d * d);
  }
  double bound = fermi_mixing_bound(sys, t);
  bool passed = (t < 1.0) || (sup4d2 <= bound + tols.bound_slack);

  json report = base_report("fermion", opt, tols, inputs);
  report["results"] = {{"eigenvalues", es.eigenvalues},
                       {"gns_norms_squared", es.gns_norms},
                       {"operator_norms", es.op_norms},
                       {"mixing_bound", bound},
                       {"sampled_sup_4dtr2", sup4d2},
                       {"mixing_time_eps_0.01", fermi_mixing_time(sys, 0.01)},
                       {"passed", passed}};
  if (curve) {
    auto points = sample_curve(
        spec, sigma, linspace(1.0, tmax, steps),
        [&](double s) { return std::sqrt(fermi_mixing_bound(sys, s)); },
        opt.seed, samples);
    passed = passed && curve_valid(points);
    report["results"]["passed"] = passed;
    if (opt.format == "csv" && opt.output.empty()) {
      std::cout << curve_csv(points);
      return passed ? 0 : 1;
    }
    report["decay_curve"] = curve_json(points);
  }
  return emit(report, opt, passed);
}

// ---- boson ------------------------------------------------------------------

int run_boson(const Options& opt, const Tolerances& tols, double beta,
              std::vector<double> omegas, int degree, double K, bool curve,
              double tmax, int steps, int samples) {
  BosonSystem sys = make_boson_system(beta, omegas);
  json inputs = {{"beta", beta},   {"omegas", omegas}, {"degree", degree},
                 {"K", K},         {"curve", curve},   {"tmax", tmax},
                 {"steps", steps}, {"samples", samples}};

  // Symbolic eigen-relation residuals up to the requested degree.
  double worst = 0.0;
  std::vector<int> zeros(sys.N, 0);
  std::function<void(BoseIndex&, BoseIndex&, int, int)> sweep =
      [&](BoseIndex& l, BoseIndex& m, int mode, int budget) {
        if (mode == 2 * sys.N) {
          worst = std::max(worst, check_eigenrelation(sys, l, m));
          return;
        }
        BoseIndex& target = mode < sys.N ? l : m;
        int k = mode % sys.N;
        for (int v = 0; v <= budget; ++v) {
          target[k] = v;
          sweep(l, m, mode + 1, budget - v);
        }
        target[k] = 0;
      };
  BoseIndex l = zeros, m = zeros;
  sweep(l, m, 0, degree);
  bool passed = worst < tols.symbolic;

  json report = base_report("boson", opt, tols, inputs);
  report["results"] = {{"max_symbolic_residual", worst},
                       {"gamma", sys.gamma},
                       {"delta", sys.delta},
                       {"mixing_bound_t1", bose_bound(sys, K, 1.0)},
                       {"mixing_time_eps_0.01", bose_mixing_time(sys, K, 0.01)},
                       {"passed", passed}};
  if (curve) {
    if (sys.N != 1) {
      std::cerr << "error: decay curves require N = 1\n";
      return 2;
    }
    TruncatedFock fock = make_truncated_fock(1, 25);
    LindbladSpec spec = fock_generator(sys, fock);
    DensityState sigma = fock_thermal_state(sys, fock);
    double T = bose_mixing_time(sys, K, 1.0);
    auto points = sample_curve(
        spec, sigma, linspace(T, T + tmax, steps),
        [&](double s) { return std::sqrt(bose_bound(sys, K, s)); }, opt.seed,
        samples);
    passed = passed && curve_valid(points);
    report["results"]["passed"] = passed;
    report["decay_curve"] = curve_json(points);
    report["decay_curve_caveat"] =
        "finite Fock truncation at cutoff 25; sampled column is the "
        "truncated dynamics, bound column is the untruncated closed form";
  }
  return emit(report, opt, passed);
}

// ---- g0-table ----------------------------------------------------------------

int run_g0_table(const Options& opt, const Tolerances& tols) {
  using namespace qms::roots;
  json rows = json::array();
  auto add = [&](Type t, int r) {
    RootDatum d = build_root_datum(t, r);
    G0Result res = compute_g0(d);
    json mins = json::array();
    for (long long c : res.minimizer.coords) mins.push_back(c);
    rows.push_back({{"type", type_name(t)},
                    {"rank", r},
                    {"g0", rational_str(res.g0)},
                    {"minimizer", mins}});
  };
  for (int r = 1; r <= 8; ++r) add(Type::A, r);
  for (int r = 2; r <= 8; ++r) add(Type::B, r);
  for (int r = 3; r <= 8; ++r) add(Type::C, r);
  for (int r = 4; r <= 8; ++r) add(Type::D, r);
  add(Type::E6, 6);
  add(Type::E7, 7);
  add(Type::E8, 8);
  add(Type::F4, 4);
  add(Type::G2, 2);
  json report = base_report("g0-table", opt, tols, json::object());
  report["results"] = {{"table", rows}, {"passed", true}};
  return emit(report, opt, true);
}

// ---- casimir -----------------------------------------------------------------

MatrixLieRep parse_rep(const std::string& label) {
  if (label.rfind("sl2:n=", 0) == 0)
    return sl2_irrep(std::stoi(label.substr(6)));
  if (label == "sl3") return sl_defining(3);
  if (label == "sl3-adjoint") return sl3_adjoint();
  if (label == "sp4") return sp_defining(4);
  if (label == "so5") return so_defining(5);
  if (label == "so3") return so_defining(3);
  throw CLI::ValidationError(
      "rep must be one of sl2:n=<k>, sl3, sl3-adjoint, sp4, so5, so3");
}

int run_casimir(const Options& opt, const Tolerances& tols,
                const std::string& rep_label, bool curve, double tmax,
                int steps, int samples) {
  MatrixLieRep rep = parse_rep(rep_label);
  validate(rep);
  json inputs = {{"rep", rep_label},
                 {"curve", curve},
                 {"tmax", tmax},
                 {"steps", steps},
                 {"samples", samples}};
  KillingFrame frame = killing_orthonormalize(rep);
  GnsSpace space = make_gns_space(maximally_mixed(rep.dim_V));
  SpectralBasis basis =
      spectral_decomposition(build_casimir_generator(frame), space);
  GapDecay gd = gap_and_decay(rep);

  // Predicted vs numeric spectrum, multiplicity-exact.
  roots::RootDatum datum =
      roots::build_root_datum(*rep.root_type, rep.root_rank);
  auto predicted = predicted_spectrum(datum, rep.highest_weight);
  bool spectrum_ok = true;
  std::map<roots::Rational, long long> counted;
  for (double lambda : basis.eigenvalues) {
    bool matched = false;
    for (const auto& [value, mult] : predicted)
      if (std::abs(lambda - value.convert_to<double>()) < tols.spectral) {
        counted[value] += 1;
        matched = true;
        break;
      }
    spectrum_ok = spectrum_ok && matched;
  }
  for (const auto& [value, mult] : predicted)
    spectrum_ok = spectrum_ok && (counted[value] == mult);
  double norm_ratio = check_norm_bound(basis, space);
  bool passed = spectrum_ok && norm_ratio <= 1.0 + tols.spectral;

  json predicted_rows = json::array();
  for (const auto& [value, mult] : predicted)
    predicted_rows.push_back(
        {{"value", roots::rational_str(value)}, {"multiplicity", mult}});

  json report = base_report("casimir", opt, tols, inputs);
  report["results"] = {{"gap", gd.gap},
                       {"g0", roots::rational_str(gd.g0)},
                       {"decay_constant", gd.decay_constant},
                       {"eigenvalues", basis.eigenvalues},
                       {"predicted_spectrum", predicted_rows},
                       {"spectrum_matches", spectrum_ok},
                       {"norm_ratio", norm_ratio},
                       {"passed", passed}};
  if (curve) {
    LindbladSpec spec = casimir_spec(frame);
    auto points = sample_curve(
        spec, maximally_mixed(rep.dim_V), linspace(0.0, tmax, steps),
        [&](double s) { return decay_bound(gd, s); }, opt.seed, samples);
    passed = passed && curve_valid(points);
    report["results"]["passed"] = passed;
    if (opt.format == "csv" && opt.output.empty()) {
      std::cout << curve_csv(points);
      return passed ? 0 : 1;
    }
    report["decay_curve"] = curve_json(points);
  }
  return emit(report, opt, passed);
}

// ---- verify -------------------------------------------------------------------

int run_verify(const Options& opt, const Tolerances& tols,
               const std::string& suite) {
  json checks = json::array();
  bool all_ok = true;
  auto record = [&](const std::string& name, bool ok, double value) {
    checks.push_back({{"check", name}, {"passed", ok}, {"value", value}});
    all_ok = all_ok && ok;
  };

  {  // divergence chain
    Rng rng(opt.seed);
    double worst = 0.0;
    for (int dim : {2, 3, 4}) {
      for (int k = 0; k < 50; ++k) {
        DensityState rho = random_state(rng, dim);
        DensityState sigma = random_state(rng, dim);
        GnsSpace space = make_gns_space(sigma);
        double chi2 = chi2_divergence(rho, space);
        double d = trace_distance(rho, sigma);
        worst = std::max(worst, 4.0 * d * d - chi2);
        worst = std::max(worst, relative_entropy(rho, sigma) - chi2);
      }
    }
    record("divergence_chain", worst <= tols.divergence, worst);
  }
  {  // fermionic closed forms, N = 2
    FermionSystem sys{2, 0.5, {1.0, 1.3}};
    FermiEigensystem es = fermi_eigensystem(sys);
    GnsSpace space = make_gns_space(fermi_state(sys));
    SpectralBasis numeric = spectral_decomposition(
        build_generator(build_fermi_generator(sys)), space);
    double worst = 0.0;
    for (size_t j = 0; j < es.eigenvalues.size(); ++j)
      worst = std::max(worst,
                       std::abs(es.eigenvalues[j] - numeric.eigenvalues[j]));
    record("fermion_closed_forms", worst < tols.spectral, worst);
  }
  {  // bosonic symbolic residuals
    BosonSystem sys = make_boson_system(1.0, {1.0});
    double worst = 0.0;
    for (int lm = 0; lm <= 6; ++lm)
      for (int li = 0; li <= lm; ++li)
        worst = std::max(worst, check_eigenrelation(sys, {li}, {lm - li}));
    record("boson_symbolic", worst < tols.symbolic, worst);
  }
  {  // g0 spot values
    using namespace qms::roots;
    bool ok = compute_g0(build_root_datum(Type::G2, 2)).g0 == Rational(1, 2) &&
              compute_g0(build_root_datum(Type::F4, 4)).g0 == Rational(2, 3) &&
              compute_g0(build_root_datum(Type::B, 3)).g0 == Rational(3, 5);
    record("g0_spot_values", ok, ok ? 0.0 : 1.0);
  }
  {  // casimir sl2 gap
    SpectralBasis basis = spectral_decomposition(
        build_casimir_generator(killing_orthonormalize(sl2_irrep(4))),
        make_gns_space(maximally_mixed(4)));
    double gap = spectral_gap(basis);
    record("casimir_sl2_gap", std::abs(gap - 1.0) < tols.spectral, gap);
  }
  if (suite == "all") {
    {  // detailed balance + time reversal on the thermal qubit
      Operator h(2, 2);
      h << 0, 0, 0, 1;
      DensityState sigma = gibbs_state(h, 1.0);
      Operator v = Operator::Zero(2, 2);
      v(0, 1) = 1.0;
      LindbladSpec spec = ad_sigma_construction(
          sigma, {{1.0, v}, {-1.0, v.adjoint()}});
      DetailedBalanceReport db = check_detailed_balance(spec, sigma);
      record("detailed_balance", db.residual_sufficient < tols.divergence,
             db.residual_sufficient);
      Rng rng(opt.seed + 1);
      std::vector<Operator> ops = {random_hermitian(rng, 2),
                                   random_hermitian(rng, 2)};
      double res = check_time_reversal(spec, sigma, {0.3, 1.1}, ops);
      record("time_reversal", res < tols.spectral, res);
    }
    {  // gamma calculus
      KillingFrame frame = killing_orthonormalize(sl2_irrep(3));
      double min_eig = gamma_calculus_check(frame, 50, opt.seed);
      record("gamma_calculus", min_eig >= -tols.spectral, min_eig);
      double res = gamma_tensor_identity_residual(frame);
      record("gamma_tensor_identity", res < tols.spectral, res);
    }
    {  // exact classical identities
      bool ok = true;
      for (int i = 0; i < 12; ++i) ok = ok && sl2_classical_identity_exact(12, i);
      for (int li = 0; li <= 6; ++li)
        ok = ok && classical_eigen_identity_exact(BoseRational(3, 2), li);
      record("classical_exact_identities", ok, ok ? 0.0 : 1.0);
    }
  }

  json report = base_report("verify", opt, tols, {{"suite", suite}});
  report["results"] = {{"checks", checks}, {"passed", all_ok}};
  return emit(report, opt, all_ok);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lindblad-lab: reversible quantum Markov semigroup toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  Options opt;
  app.add_option("--seed", opt.seed, "RNG seed for sampling suites");
  app.add_option("--output", opt.output, "Write the report to this path");
  app.add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "md"}));
  app.add_flag("--strict", opt.strict, "Halve all numerical tolerances");

  // divergence
  auto* div = app.add_subcommand("divergence", "Divergence-chain sampling");
  int div_dim = 4, div_pairs = 500;
  div->add_option("--dim", div_dim, "State dimension")->check(CLI::Range(2, 16));
  div->add_option("--pairs", div_pairs, "Number of sampled pairs")
      ->check(CLI::PositiveNumber);

  // lindblad-spectrum
  auto* spc = app.add_subcommand("lindblad-spectrum",
                                 "GNS spectral decomposition of a generator");
  std::string spec_file, state_file;
  spc->add_option("--spec", spec_file, "Generator spec JSON file")->required();
  spc->add_option("--state", state_file, "Reference state JSON file")
      ->required();

  // fermion
  auto* fer = app.add_subcommand("fermion", "Fermionic semigroup report");
  int fer_N = 2, fer_samples = 100, fer_steps = 11;
  double fer_beta = 1.0, fer_t = 2.0, fer_tmax = 5.0;
  bool fer_curve = false;
  std::vector<double> fer_omegas;
  fer->add_option("--N", fer_N, "Mode count")->check(CLI::Range(1, 10));
  fer->add_option("--beta", fer_beta, "Inverse temperature")
      ->check(CLI::NonNegativeNumber);
  fer->add_option("--omegas", fer_omegas, "Mode frequencies")->delimiter(',');
  fer->add_option("--t", fer_t, "Evaluation time");
  fer->add_option("--samples", fer_samples, "Sampled states")
      ->check(CLI::PositiveNumber);
  fer->add_flag("--curve", fer_curve, "Emit the decay curve");
  fer->add_option("--tmax", fer_tmax, "Curve end time");
  fer->add_option("--steps", fer_steps, "Curve time points");

  // boson
  auto* bos = app.add_subcommand("boson", "Bosonic semigroup report");
  int bos_degree = 6, bos_steps = 7, bos_samples = 20;
  double bos_beta = 1.0, bos_K = 4.0, bos_tmax = 3.0;
  bool bos_curve = false;
  std::vector<double> bos_omegas = {1.0};
  bos->add_option("--beta", bos_beta, "Inverse temperature (> 0)");
  bos->add_option("--omegas", bos_omegas, "Mode frequencies")->delimiter(',');
  bos->add_option("--degree", bos_degree, "Symbolic sweep degree")
      ->check(CLI::Range(0, 12));
  bos->add_option("--K", bos_K, "Moment-class constant");
  bos->add_flag("--curve", bos_curve, "Emit the (truncated) decay curve");
  bos->add_option("--tmax", bos_tmax, "Curve duration past the mixing time");
  bos->add_option("--steps", bos_steps, "Curve time points");
  bos->add_option("--samples", bos_samples, "Sampled states");

  // g0-table
  app.add_subcommand("g0-table", "Exact spectral-gap constants");

  // casimir
  auto* cas = app.add_subcommand("casimir", "Casimir generator report");
  std::string cas_rep = "sl2:n=4";
  int cas_steps = 11, cas_samples = 50;
  double cas_tmax = 5.0;
  bool cas_curve = false;
  cas->add_option("--rep", cas_rep,
                  "Representation: sl2:n=<k>, sl3, sl3-adjoint, sp4, so5, so3");
  cas->add_flag("--curve", cas_curve, "Emit the decay curve");
  cas->add_option("--tmax", cas_tmax, "Curve end time");
  cas->add_option("--steps", cas_steps, "Curve time points");
  cas->add_option("--samples", cas_samples, "Sampled states");

  // verify
  auto* ver = app.add_subcommand("verify", "Cross-module verification suite");
  std::string suite = "core";
  ver->add_option("--suite", suite, "Suite name")
      ->check(CLI::IsMember({"core", "all"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Tolerances tols;
  if (opt.strict) tols.halve();
  (void)qms::parallel::max_threads();  // honor LINDBLAD_LAB_THREADS

  auto start = std::chrono::steady_clock::now();
  int rc = 2;
  try {
    if (div->parsed())
      rc = run_divergence(opt, tols, div_dim, div_pairs);
    else if (spc->parsed())
      rc = run_spectrum(opt, tols, spec_file, state_file);
    else if (fer->parsed())
      rc = run_fermion(opt, tols, fer_N, fer_beta, fer_omegas, fer_t,
                       fer_samples, fer_curve, fer_tmax, fer_steps);
    else if (bos->parsed())
      rc = run_boson(opt, tols, bos_beta, bos_omegas, bos_degree, bos_K,
                     bos_curve, bos_tmax, bos_steps, bos_samples);
    else if (app.get_subcommand("g0-table")->parsed())
      rc = run_g0_table(opt, tols);
    else if (cas->parsed())
      rc = run_casimir(opt, tols, cas_rep, cas_curve, cas_tmax, cas_steps,
                       cas_samples);
    else if (ver->parsed())
      rc = run_verify(opt, tols, suite);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  std::cerr << "elapsed: " << seconds << " s\n";
  return rc;
}
