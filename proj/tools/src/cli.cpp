// Copyright 2026 The qcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcorr_cli/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>

#include "qcorr/config.hpp"
#include "qcorr/correlations.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/experiments.hpp"
#include "qcorr/records_io.hpp"
#include "qcorr/rmt.hpp"
#include "qcorr/sampling.hpp"
#include "qcorr/values.hpp"

namespace qcorr::cli {
namespace {

using json = nlohmann::ordered_json;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr double kReferenceAlpha0 = 0.00404;

json certificate_json(const Certificate& cert) {
  json j;
  j["kind"] = std::string(certificate_kind(cert));
  std::visit(
      [&j](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, LocalDecomposition>) {
          j["terms"] = c.terms.size();
          j["total"] = c.total;
        } else if constexpr (std::is_same_v<T, LocalNormBound>) {
          j["linf_l2"] = c.linf_l2_value;
        } else if constexpr (std::is_same_v<T, NonlocalExact>) {
          j["inner_product"] = c.inner_product;
          j["omega"] = std::get<ExactBound>(c.witness.classical_bound).omega;
        } else if constexpr (std::is_same_v<T, NonlocalChsh>) {
          j["rows"] = {c.row_a, c.row_b};
          j["cols"] = {c.col_a, c.col_b};
          j["chsh_value"] = c.chsh_value;
        } else if constexpr (std::is_same_v<T, NonlocalStatistical>) {
          j["inner_product"] = c.inner_product;
          j["threshold"] = c.threshold;
        }
      },
      cert);
  return j;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  f << contents;
  f.close();
  if (!f) throw IoError("failed writing '" + path.string() + "'");
}

std::string config_help() {
  std::string s = "Config keys (key = value, one per line; --set key=value overrides):\n";
  for (const auto& key : config_keys()) {
    s += "  " + std::string(key.name) + std::string(18 - std::min<std::size_t>(key.name.size(), 17), ' ') +
         std::string(key.help) + "\n";
  }
  return s;
}

ThresholdMode parse_threshold_mode(const std::string& s) {
  if (s == "asymptotic") return ThresholdMode::kAsymptotic;
  if (s == "finite_n") return ThresholdMode::kFiniteN;
  throw ArgumentError("threshold mode must be asymptotic or finite_n");
}

struct SweepArgs {
  std::string config;
  std::string out;
  std::vector<std::string> overrides;
  std::optional<int> threads;
  std::optional<std::uint64_t> seed;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  ConfigMap map = read_config_file(a.config);
  for (const auto& o : a.overrides) apply_override(map, o);
  if (a.threads) map["threads"] = std::to_string(*a.threads);
  if (a.seed) map["seed"] = std::to_string(*a.seed);
  const ExperimentConfig config = to_experiment_config(map);

  const std::filesystem::path dir(a.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + a.out + "': " + ec.message());

  const SweepResult result = run_phase_sweep(config);
  std::ostringstream records;
  write_records_csv(records, result.records);
  std::ostringstream summary;
  write_summary_csv(summary, result.summary);
  write_file(dir / "records.csv", records.str());
  write_file(dir / "summary.csv", summary.str());
  out << "wrote " << result.records.size() << " records and " << result.summary.size()
      << " cells to " << dir.string() << "\n";
  return kExitOk;
}

struct ClassifyArgs {
  int n = 0;
  int m = 0;
  std::uint64_t seed = 0;
  std::string mode = "independent";
  int n_exact = 16;
  std::string threshold_mode = "asymptotic";
};

int cmd_classify(const ClassifyArgs& a, std::ostream& out) {
  if (a.n < 1) throw ArgumentError("--n must be positive");
  if (a.m < 1) throw ArgumentError("--m must be positive");
  ExperimentConfig config;
  const auto mode = parse_sampling_mode(a.mode);
  if (!mode) throw ArgumentError("--mode must be independent, coupled or bernoulli");
  config.mode = *mode;
  config.n_exact = a.n_exact;
  config.threshold_mode = parse_threshold_mode(a.threshold_mode);
  if (config.n_exact < 0 || config.n_exact > kMaxExactSize) {
    throw ArgumentError("--n-exact must lie in [0, 20]");
  }
  const SeedPath seed = SeedPath(a.seed).child("classify");
  const TrialSample sample = sample_trial(config.mode, a.n, a.m, seed);
  const ClassifyContext ctx = make_context(config, seed, a.m, sample);
  const ClassifyOutcome outcome = classify_trial(sample.gamma, ctx);
  const Classification& c = outcome.classification;

  json j;
  j["n"] = a.n;
  j["m"] = a.m;
  j["mode"] = std::string(to_string(config.mode));
  j["seed_path"] = seed.to_string();
  j["verdict"] = std::string(to_string(c.verdict));
  j["certifier"] = c.certifier;
  j["certificate"] = c.certificate ? certificate_json(*c.certificate) : json(nullptr);
  json diag = json::object();
  for (const auto& [k, v] : c.diagnostics) diag[k] = v;
  j["diagnostics"] = diag;
  j["notes"] = c.notes;
  out << j.dump(2) << "\n";
  return kExitOk;
}

struct WitnessArgs {
  int n = 0;
  int m = 0;
  std::uint64_t seed = 0;
  std::string threshold_mode = "asymptotic";
};

int cmd_witness(const WitnessArgs& a, std::ostream& out) {
  if (a.n < 1) throw ArgumentError("--n must be positive");
  if (a.m < 1 || a.m > a.n) throw ArgumentError("--m must lie in [1, n]");
  const CoupledSvdSample sample =
      sample_coupled_svd(a.n, SeedPath(a.seed).child("witness").child("coupled"));
  const CoupledWitness w = coupled_svd_witness(sample, a.m, parse_threshold_mode(a.threshold_mode));
  const double scale = std::pow(static_cast<double>(a.n), 1.5);
  json j;
  j["n"] = a.n;
  j["m"] = a.m;
  j["inner_product"] = w.inner_product;
  j["normalized"] = w.inner_product / scale;
  j["scaled_inner_product"] = w.scaled_inner_product;
  j["scaled_normalized"] = w.scaled_inner_product / scale;
  j["threshold"] = w.threshold;
  if (a.m < a.n) j["delta"] = mp_inverse(static_cast<double>(a.m) / a.n);
  j["statistically_nonlocal"] = w.statistically_nonlocal;
  if (a.n <= kMaxExactSize) j["omega"] = classical_value_exact(sample.a).omega;
  out << j.dump(2) << "\n";
  return kExitOk;
}

struct RmtArgs {
  std::string check;
  double c = 1.0;
  double alpha = 0.5;
  int n = 500;
  int m = 250;
  std::uint64_t seed = 0;
  std::int64_t trials = 10000;
  int points = 201;
  std::string csv;
};

void report_decoupling(const DecouplingReport& r, std::ostream& out) {
  out << "n = " << r.n << "\nm = " << r.m << "\nalpha = " << format_float(r.alpha)
      << "\nresidual = " << format_float(r.residual)
      << "\ntheta = " << format_float(r.theta_alpha) << "\nratio = " << format_float(r.ratio)
      << "\n";
}

int cmd_rmt(const RmtArgs& a, std::ostream& out) {
  if (a.check == "mp") {
    out << "f(" << format_float(a.c) << ") = " << format_float(mp_fraction(a.c)) << "\n";
    if (!a.csv.empty()) {
      const MpCurve curve = MpCurve::tabulate(a.points);
      std::ostringstream s;
      s << "C,f\n";
      for (const auto& [c, f] : curve.samples) s << format_float(c) << ',' << format_float(f) << '\n';
      write_file(a.csv, s.str());
    }
  } else if (a.check == "theta") {
    out << "theta(" << format_float(a.alpha) << ") = " << format_float(theta(a.alpha)) << "\n";
  } else if (a.check == "alpha0") {
    const double alpha0 = alpha0_solve();
    out << "alpha0 = " << format_float(alpha0) << "\nreference = " << format_float(kReferenceAlpha0)
        << "\ngap_at_reference = " << format_float(alpha0_gap(kReferenceAlpha0)) << "\n";
  } else if (a.check == "decouple") {
    if (a.n < 1) throw ArgumentError("--n must be positive");
    const Matrix g = sample_gaussian_matrix(a.n, a.n, SeedPath(a.seed).child("decouple"));
    report_decoupling(decoupling_residual(g, a.m), out);
  } else if (a.check == "tails") {
    const SeedPath seed = SeedPath(a.seed).child("tails");
    ConcentrationParams gaussian;
    gaussian.m = 400;
    gaussian.epsilon = 0.3;
    ConcentrationParams chernoff;
    chernoff.t = 2.0;
    ConcentrationParams projection;
    projection.n = 400;
    projection.m = 100;
    projection.rho = 0.5;
    const std::pair<ConcentrationKind, ConcentrationParams> runs[] = {
        {ConcentrationKind::kGaussianNorm, gaussian},
        {ConcentrationKind::kChernoff, chernoff},
        {ConcentrationKind::kProjection, projection}};
    bool all = true;
    for (const auto& [kind, params] : runs) {
      const auto r = concentration_check(kind, params, a.trials, seed.child(to_string(kind)));
      all = all && r.pass;
      out << to_string(kind) << ": frequency = " << format_float(r.frequency)
          << " bound = " << format_float(r.bound) << " sigma = " << format_float(r.sigma)
          << (r.pass ? " pass" : " FAIL") << "\n";
    }
    out << (all ? "all bounds respected\n" : "some bound violated\n");
  } else {
    throw ArgumentError("--check must be one of mp, theta, alpha0, decouple, tails");
  }
  return kExitOk;
}

struct DecoupleArgs {
  int n = 500;
  int m = 250;
  std::uint64_t seed = 0;
  int seeds = 1;
  std::string csv;
};

int cmd_decouple(const DecoupleArgs& a, std::ostream& out) {
  if (a.n < 1) throw ArgumentError("--n must be positive");
  if (a.seeds < 1) throw ArgumentError("--seeds must be positive");
  std::ostringstream s;
  s << "seed,n,m,alpha,residual,theta,ratio\n";
  for (int k = 0; k < a.seeds; ++k) {
    const Matrix g = sample_gaussian_matrix(
        a.n, a.n, SeedPath(a.seed).child("decouple").child(static_cast<std::uint64_t>(k)));
    const DecouplingReport r = decoupling_residual(g, a.m);
    s << k << ',' << r.n << ',' << r.m << ',' << format_float(r.alpha) << ','
      << format_float(r.residual) << ',' << format_float(r.theta_alpha) << ','
      << format_float(r.ratio) << '\n';
  }
  if (a.csv.empty()) {
    out << s.str();
  } else {
    write_file(a.csv, s.str());
    out << "wrote " << a.seeds << " reports to " << a.csv << "\n";
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qcorr: locality and nonlocality of random quantum correlation matrices"};
  app.require_subcommand(1);
  app.footer(config_help());

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a phase sweep and write records.csv and summary.csv");
  sweep_cmd->add_option("config", sweep.config, "Config file (flat key = value)")->required();
  sweep_cmd->add_option("--out", sweep.out, "Output directory")->required();
  sweep_cmd->add_option("--set", sweep.overrides, "Override a config key, key=value");
  sweep_cmd->add_option("--threads", sweep.threads, "Worker threads (default: all cores)");
  sweep_cmd->add_option("--seed", sweep.seed, "Master seed override");

  ClassifyArgs classify;
  auto* classify_cmd = app.add_subcommand("classify", "Classify one sampled correlation, JSON to stdout");
  classify_cmd->add_option("--n", classify.n, "Number of settings n")->required();
  classify_cmd->add_option("--m", classify.m, "Vector dimension m")->required();
  classify_cmd->add_option("--seed", classify.seed, "Master seed");
  classify_cmd->add_option("--mode", classify.mode, "independent | coupled | bernoulli");
  classify_cmd->add_option("--n-exact", classify.n_exact, "Largest n for the exact pi-norm");
  classify_cmd->add_option("--threshold-mode", classify.threshold_mode, "asymptotic | finite_n");

  WitnessArgs witness;
  auto* witness_cmd = app.add_subcommand("witness", "Coupled SVD witness for one sample, JSON to stdout");
  witness_cmd->add_option("--n", witness.n, "Number of settings n")->required();
  witness_cmd->add_option("--m", witness.m, "Truncation dimension m")->required();
  witness_cmd->add_option("--seed", witness.seed, "Master seed");
  witness_cmd->add_option("--threshold-mode", witness.threshold_mode, "asymptotic | finite_n");

  RmtArgs rmt;
  auto* rmt_cmd = app.add_subcommand("rmt", "Random-matrix checks");
  rmt_cmd->add_option("--check", rmt.check, "mp | theta | alpha0 | decouple | tails")->required();
  rmt_cmd->add_option("--C", rmt.c, "Threshold C for mp");
  rmt_cmd->add_option("--alpha", rmt.alpha, "Ratio alpha for theta");
  rmt_cmd->add_option("--n", rmt.n, "Size n for decouple");
  rmt_cmd->add_option("--m", rmt.m, "Columns m for decouple");
  rmt_cmd->add_option("--seed", rmt.seed, "Master seed");
  rmt_cmd->add_option("--trials", rmt.trials, "Trials per tail check");
  rmt_cmd->add_option("--points", rmt.points, "Grid points for the mp curve");
  rmt_cmd->add_option("--csv", rmt.csv, "Write the mp curve to this CSV file");

  DecoupleArgs decouple;
  auto* decouple_cmd = app.add_subcommand("decouple", "Decoupling residuals over several seeds, CSV");
  decouple_cmd->add_option("--n", decouple.n, "Size n");
  decouple_cmd->add_option("--m", decouple.m, "Columns m");
  decouple_cmd->add_option("--seed", decouple.seed, "Master seed");
  decouple_cmd->add_option("--seeds", decouple.seeds, "Number of independent samples");
  decouple_cmd->add_option("--csv", decouple.csv, "Write to this file instead of stdout");

  std::vector<char*> argv;
  std::vector<std::string> storage = args;
  if (storage.empty()) storage.emplace_back("qcorr");
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitConfig;
  }

  try {
    if (*sweep_cmd) return cmd_sweep(sweep, out);
    if (*classify_cmd) return cmd_classify(classify, out);
    if (*witness_cmd) return cmd_witness(witness, out);
    if (*rmt_cmd) return cmd_rmt(rmt, out);
    if (*decouple_cmd) return cmd_decouple(decouple, out);
  } catch (const IoError& e) {
    err << "qcorr: error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "qcorr: error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "qcorr: error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace qcorr::cli
