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

#include "qcorr/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <string>
#include <thread>
#include <tuple>

#include "qcorr/errors.hpp"
#include "qcorr/records_io.hpp"

namespace qcorr {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

class Pipeline {
 public:
  Pipeline(const Matrix& gamma, const ClassifyContext& ctx) : gamma_(gamma), ctx_(ctx) {}

  ClassifyOutcome run() {
    const int n = static_cast<int>(gamma_.rows());
    if (stage("fast_local", [&] { return fast_local(); })) return finish(true);
    if (ctx_.mode == SamplingMode::kBernoulli && ctx_.ensemble != nullptr &&
        stage("sign_ensemble", [&] { return sign_ensemble(); })) {
      return finish(true);
    }
    if (n >= 2 && stage("chsh", [&] { return chsh(); })) return finish(true);
    if (n <= ctx_.n_exact && stage("pi_norm", [&] { return pi_norm(); })) return finish(false);
    if (ctx_.mode == SamplingMode::kCoupled && ctx_.coupled != nullptr &&
        stage("witness", [&] { return witness(); })) {
      return finish(false);
    }
    return finish(false);
  }

 private:
  template <typename F>
  bool stage(const char* name, F&& body) {
    const auto start = Clock::now();
    bool done = false;
    try {
      done = body();
    } catch (const std::exception& e) {
      const std::string msg = std::string(name) + " stage failed: " + e.what();
      log_warning(msg);
      out_.classification.notes.push_back(msg);
    }
    out_.timings.push_back({name, elapsed_ms(start)});
    return done;
  }

  bool accept(Verdict verdict, Certificate cert, const char* certifier) {
    const VerificationResult check = verify_certificate(gamma_, cert);
    if (!check.ok) {
      const std::string msg =
          std::string(certifier) + " certificate rejected on re-verification: " + check.reason;
      log_warning(msg);
      out_.classification.notes.push_back(msg);
      return false;
    }
    auto& cls = out_.classification;
    cls.verdict = verdict;
    cls.certificate = std::move(cert);
    cls.certifier = certifier;
    return true;
  }

  bool fast_local() {
    diag("linf_l2", linf_l2_norm(gamma_));
    auto cert = certify_local_fast(gamma_);
    return cert && accept(Verdict::kLocalCertified, std::move(*cert), "fast_local");
  }

  bool sign_ensemble() {
    auto decomposition = sign_ensemble_decomposition(*ctx_.ensemble);
    return decomposition &&
           accept(Verdict::kLocalCertified, std::move(*decomposition), "sign_ensemble");
  }

  bool chsh() {
    const ChshScan scan = chsh_scan(gamma_, ctx_.chsh);
    diag("chsh_max", scan.value);
    if (scan.sampled) diag("chsh_sampled", 1.0);
    if (!(scan.value > 2.0 + ctx_.margins.chsh)) return false;
    return accept(Verdict::kNonlocalCertified, scan.best, "chsh");
  }

  PiNormResult& exact_pi_norm() {
    if (!pi_) {
      PiNormOptions options = ctx_.pi_norm;
      options.stop_above = 1.0 + ctx_.margins.pi_nonlocal;
      options.stop_below = 1.0 + ctx_.margins.pi_local;
      pi_ = pi_norm_exact(gamma_, options);
      diag("pi_norm", pi_->value);
      diag("pi_norm_lower", pi_->lower);
      if (!pi_->converged && !pi_->stopped_early) {
        out_.classification.notes.push_back("pi_norm: cut limit reached");
      }
    }
    return *pi_;
  }

  bool pi_norm() {
    PiNormResult& r = exact_pi_norm();
    if (r.upper <= 1.0 + ctx_.margins.pi_local) {
      return accept(Verdict::kLocalCertified, r.decomposition, "pi_norm");
    }
    if (r.lower > 1.0 + ctx_.margins.pi_nonlocal) {
      NonlocalExact cert{r.dual_witness, frobenius_inner(r.dual_witness.entries, gamma_)};
      return accept(Verdict::kNonlocalCertified, std::move(cert), "pi_norm");
    }
    out_.classification.notes.push_back("pi_norm within margin of 1");
    return false;
  }

  bool witness() {
    const CoupledWitness w =
        coupled_svd_witness(*ctx_.coupled, ctx_.m, ctx_.threshold_mode, ctx_.margins.witness);
    diag("witness_value", w.inner_product);
    diag("witness_scaled", w.scaled_inner_product);
    diag("stat_threshold", w.threshold);
    const double inner = frobenius_inner(w.witness.entries, gamma_);
    if (gamma_.rows() <= kMaxExactSize) {
      const double omega = classical_value_exact(w.witness.entries).omega;
      diag("witness_omega", omega);
      if (!(inner > omega + ctx_.margins.exact_witness)) return false;
      BellWitness exact{w.witness.entries, ExactBound{omega}};
      return accept(Verdict::kNonlocalCertified, NonlocalExact{std::move(exact), inner},
                    "exact_witness");
    }
    if (!w.statistically_nonlocal) return false;
    NonlocalStatistical cert{w.witness, inner, w.threshold * (1.0 + ctx_.margins.witness)};
    return accept(Verdict::kStatisticallyNonlocal, std::move(cert), "witness");
  }

  ClassifyOutcome finish(bool cheap_stage) {
    if (cheap_stage && ctx_.audit && gamma_.rows() <= ctx_.n_exact) audit();
    return std::move(out_);
  }

  // The cheap certifiers must agree with the exact pi-norm.
  void audit() {
    stage("audit", [&] {
      const PiNormResult& r = exact_pi_norm();
      const bool local = out_.classification.verdict == Verdict::kLocalCertified;
      const bool mismatch = local ? r.lower > 1.0 + ctx_.margins.pi_nonlocal
                                  : r.upper <= 1.0 + ctx_.margins.pi_local;
      if (mismatch) {
        const std::string msg = "audit: " + out_.classification.certifier +
                                " disagrees with pi_norm = " + format_float(r.value);
        log_warning(msg);
        out_.classification.notes.push_back(msg);
      }
      return false;
    });
  }

  void diag(const std::string& key, double value) { out_.classification.diagnostics[key] = value; }

  const Matrix& gamma_;
  const ClassifyContext& ctx_;
  ClassifyOutcome out_;
  std::optional<PiNormResult> pi_;
};

std::optional<double> lookup(const Classification& c, const std::string& key) {
  const auto it = c.diagnostics.find(key);
  if (it == c.diagnostics.end()) return std::nullopt;
  return it->second;
}

}  // namespace

std::string_view to_string(SamplingMode mode) {
  switch (mode) {
    case SamplingMode::kIndependent:
      return "independent";
    case SamplingMode::kCoupled:
      return "coupled";
    case SamplingMode::kBernoulli:
      return "bernoulli";
  }
  return "unknown";
}

std::optional<SamplingMode> parse_sampling_mode(std::string_view s) {
  if (s == "independent") return SamplingMode::kIndependent;
  if (s == "coupled") return SamplingMode::kCoupled;
  if (s == "bernoulli") return SamplingMode::kBernoulli;
  return std::nullopt;
}

ClassifyOutcome classify_trial(const Matrix& gamma, const ClassifyContext& context) {
  if (gamma.rows() != gamma.cols() || gamma.rows() == 0) {
    throw DimensionError("classify_trial: gamma must be square and nonempty");
  }
  if (context.n_exact > kMaxExactSize) {
    throw ArgumentError("classify_trial: n_exact must not exceed 20");
  }
  return Pipeline(gamma, context).run();
}

void ExperimentConfig::validate() const {
  if (n_grid.empty()) throw ArgumentError("config: n_grid is empty");
  if (alpha_grid.empty()) throw ArgumentError("config: alpha_grid is empty");
  for (int n : n_grid) {
    if (n < 1) throw ArgumentError("config: n_grid entries must be positive");
  }
  for (double a : alpha_grid) {
    if (!(a > 0.0 && a <= 4.0)) {
      throw ArgumentError("config: alpha_grid entries must lie in (0, 4], got " + format_float(a));
    }
  }
  if (trials_per_cell < 1) throw ArgumentError("config: trials must be at least 1");
  if (n_exact < 0 || n_exact > kMaxExactSize) {
    throw ArgumentError("config: n_exact must lie in [0, 20]");
  }
  if (chsh_samples < 1) throw ArgumentError("config: chsh_samples must be positive");
  if (threads < 0) throw ArgumentError("config: threads must be nonnegative");
}

int dimension_for(double alpha, int n) {
  return std::max(1, static_cast<int>(std::lround(alpha * n)));
}

SeedPath trial_seed(std::uint64_t master, int n, double alpha, int trial) {
  return SeedPath(master)
      .child("n=" + std::to_string(n))
      .child("alpha=" + format_float(alpha))
      .child("trial=" + std::to_string(trial));
}

TrialSample sample_trial(SamplingMode mode, int n, int m, const SeedPath& seed) {
  TrialSample out;
  switch (mode) {
    case SamplingMode::kIndependent:
      out.ensemble = sample_haar_sphere_ensemble(n, m, seed.child("ensemble"));
      out.gamma = gram(*out.ensemble).entries();
      break;
    case SamplingMode::kBernoulli:
      out.ensemble = sample_bernoulli_ensemble(n, m, seed.child("ensemble"));
      out.gamma = gram(*out.ensemble).entries();
      break;
    case SamplingMode::kCoupled: {
      if (m > n) throw ArgumentError("coupled mode needs m <= n, got m = " + std::to_string(m));
      out.coupled = sample_coupled_svd(n, seed.child("coupled"));
      const Matrix u = truncate_and_normalize_rows(out.coupled->u, m);
      const Matrix v = truncate_and_normalize_rows(out.coupled->v, m);
      out.gamma = (u * v.transpose()).cwiseMax(-1.0).cwiseMin(1.0);
      break;
    }
  }
  return out;
}

ClassifyContext make_context(const ExperimentConfig& config, const SeedPath& seed, int m,
                             const TrialSample& sample) {
  ClassifyContext ctx;
  ctx.mode = config.mode;
  ctx.n_exact = config.n_exact;
  ctx.chsh.mode = config.chsh_mode;
  ctx.chsh.samples = config.chsh_samples;
  ctx.chsh.full_scan_limit = config.chsh_full_limit;
  ctx.chsh.seed = seed.child("chsh");
  ctx.chsh.margin = config.margins.chsh;
  ctx.pi_norm.max_cuts = config.pi_max_cuts;
  ctx.margins = config.margins;
  ctx.threshold_mode = config.threshold_mode;
  ctx.audit = config.audit;
  ctx.m = m;
  if (config.mode == SamplingMode::kBernoulli && sample.ensemble) ctx.ensemble = &*sample.ensemble;
  if (sample.coupled) ctx.coupled = &*sample.coupled;
  return ctx;
}

TrialRecord run_trial(const ExperimentConfig& config, int n, double alpha, int trial) {
  const auto start = Clock::now();
  TrialRecord rec;
  rec.n = n;
  rec.m = dimension_for(alpha, n);
  rec.alpha_nominal = alpha;
  rec.alpha_actual = static_cast<double>(rec.m) / n;
  rec.trial = trial;
  const SeedPath seed = trial_seed(config.master_seed, n, alpha, trial);
  rec.seed_path = seed.to_string();

  try {
    const TrialSample sample = sample_trial(config.mode, n, rec.m, seed);
    const ClassifyContext ctx = make_context(config, seed, rec.m, sample);
    ClassifyOutcome outcome = classify_trial(sample.gamma, ctx);
    const Classification& c = outcome.classification;
    rec.verdict = c.verdict;
    rec.certifier = c.certifier;
    rec.linf_l2 = lookup(c, "linf_l2");
    rec.chsh_max = lookup(c, "chsh_max");
    rec.pi_norm = lookup(c, "pi_norm");
    rec.witness_value = lookup(c, "witness_value");
    rec.stat_threshold = lookup(c, "stat_threshold");
    rec.notes = c.notes;
    rec.stage_ms = std::move(outcome.timings);
  } catch (const std::exception& e) {
    const std::string msg = "trial " + rec.seed_path + " failed: " + e.what();
    log_warning(msg);
    rec.verdict = Verdict::kUndecided;
    rec.certifier = "none";
    rec.notes.push_back(msg);
  }
  if (config.record_timing) rec.wall_time_ms = elapsed_ms(start);
  return rec;
}

SweepResult run_phase_sweep(const ExperimentConfig& config) {
  config.validate();
  struct Task {
    int n;
    double alpha;
    int trial;
  };
  std::vector<Task> tasks;
  for (int n : config.n_grid) {
    for (double alpha : config.alpha_grid) {
      for (int t = 0; t < config.trials_per_cell; ++t) tasks.push_back({n, alpha, t});
    }
  }
  std::stable_sort(tasks.begin(), tasks.end(), [](const Task& a, const Task& b) {
    return std::tie(a.n, a.alpha, a.trial) < std::tie(b.n, b.alpha, b.trial);
  });

  SweepResult result;
  result.records.resize(tasks.size());
  unsigned threads = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(tasks.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= tasks.size()) return;
      result.records[k] = run_trial(config, tasks[k].n, tasks[k].alpha, tasks[k].trial);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  result.summary = summarize(result.records);
  return result;
}

std::vector<SummaryRow> summarize(std::vector<TrialRecord> records) {
  std::stable_sort(records.begin(), records.end(), [](const TrialRecord& a, const TrialRecord& b) {
    return std::tie(a.n, a.alpha_nominal, a.trial) < std::tie(b.n, b.alpha_nominal, b.trial);
  });
  std::vector<SummaryRow> rows;
  std::size_t k = 0;
  while (k < records.size()) {
    SummaryRow row;
    row.n = records[k].n;
    row.alpha_nominal = records[k].alpha_nominal;
    int local = 0;
    int nonlocal = 0;
    int statistical = 0;
    int undecided = 0;
    int with_norm = 0;
    double norm_sum = 0.0;
    for (; k < records.size() && records[k].n == row.n &&
           records[k].alpha_nominal == row.alpha_nominal;
         ++k) {
      switch (records[k].verdict) {
        case Verdict::kLocalCertified:
          ++local;
          break;
        case Verdict::kNonlocalCertified:
          ++nonlocal;
          break;
        case Verdict::kStatisticallyNonlocal:
          ++statistical;
          break;
        case Verdict::kUndecided:
          ++undecided;
          break;
      }
      if (records[k].linf_l2) {
        norm_sum += *records[k].linf_l2;
        ++with_norm;
      }
      ++row.trials;
    }
    const double total = row.trials;
    row.frac_local = local / total;
    row.frac_nonlocal = nonlocal / total;
    row.frac_statistical = statistical / total;
    row.frac_undecided = undecided / total;
    row.mean_linf_l2 = with_norm > 0 ? norm_sum / with_norm : 0.0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qcorr
