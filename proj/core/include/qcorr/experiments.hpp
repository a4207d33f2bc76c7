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

#ifndef QCORR_EXPERIMENTS_HPP_
#define QCORR_EXPERIMENTS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qcorr/correlations.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/rng.hpp"
#include "qcorr/sampling.hpp"
#include "qcorr/values.hpp"

namespace qcorr {

enum class SamplingMode { kIndependent, kCoupled, kBernoulli };

std::string_view to_string(SamplingMode mode);
std::optional<SamplingMode> parse_sampling_mode(std::string_view s);

struct Margins {
  double chsh = tol::kStrictMargin;       // CHSH value must exceed 2 + chsh
  double pi_local = 1e-9;                 // pi-norm <= 1 + pi_local is local
  double pi_nonlocal = 1e-6;              // pi-norm > 1 + pi_nonlocal is nonlocal
  double witness = tol::kStrictMargin;    // relative margin on the statistical threshold
  double exact_witness = tol::kStrictMargin;
};

struct ClassifyContext {
  SamplingMode mode = SamplingMode::kIndependent;
  int n_exact = 16;
  ChshOptions chsh;
  PiNormOptions pi_norm;
  Margins margins;
  ThresholdMode threshold_mode = ThresholdMode::kAsymptotic;
  // Bernoulli mode: the ensemble behind gamma, for the sign decomposition.
  const VectorEnsemble* ensemble = nullptr;
  // Coupled mode only.
  const CoupledSvdSample* coupled = nullptr;
  int m = 0;
  // Re-run the exact pi-norm on small trials certified by a cheaper stage.
  bool audit = true;
};

struct StageTiming {
  std::string stage;
  double ms = 0.0;
};

struct ClassifyOutcome {
  Classification classification;
  std::vector<StageTiming> timings;
};

// Stages, stopping at the first certificate:
//   1. certify_local_fast                        -> LocalCertified
//      sign ensemble decomposition (Bernoulli)   -> LocalCertified
//   2. CHSH scan                                 -> NonlocalCertified
//   3. pi_norm_exact if n <= n_exact             -> LocalCertified / NonlocalCertified
//   4. coupled witness (Coupled mode)            -> StatisticallyNonlocal, or
//      NonlocalCertified when n <= 20 and omega(A) is beaten exactly
//   5.                                           -> Undecided
// A failing stage is logged and skipped. Every certificate is re-verified.
ClassifyOutcome classify_trial(const Matrix& gamma, const ClassifyContext& context);

struct ExperimentConfig {
  std::vector<int> n_grid = {8};
  std::vector<double> alpha_grid = {0.25, 3.0};
  int trials_per_cell = 10;
  std::uint64_t master_seed = 0;
  SamplingMode mode = SamplingMode::kIndependent;
  int n_exact = 16;
  ChshOptions::Mode chsh_mode = ChshOptions::Mode::kAuto;
  std::int64_t chsh_samples = 1'000'000;
  int chsh_full_limit = 512;
  Margins margins;
  ThresholdMode threshold_mode = ThresholdMode::kAsymptotic;
  int pi_max_cuts = 0;
  bool audit = true;
  // wall_time_ms is left empty unless set, so records stay byte-reproducible.
  bool record_timing = false;
  int threads = 0;  // 0 means hardware concurrency

  // Throws ArgumentError on empty grids, alpha outside (0, 4], trials < 1,
  // n < 1 or n_exact > 20.
  void validate() const;
};

struct TrialRecord {
  int n = 0;
  int m = 0;
  double alpha_nominal = 0.0;
  double alpha_actual = 0.0;
  int trial = 0;
  std::string seed_path;
  Verdict verdict = Verdict::kUndecided;
  std::string certifier = "none";
  std::optional<double> linf_l2;
  std::optional<double> chsh_max;
  std::optional<double> pi_norm;
  std::optional<double> witness_value;
  std::optional<double> stat_threshold;
  std::optional<double> wall_time_ms;
  std::vector<StageTiming> stage_ms;
  std::vector<std::string> notes;
};

struct SummaryRow {
  int n = 0;
  double alpha_nominal = 0.0;
  double frac_local = 0.0;
  double frac_nonlocal = 0.0;
  double frac_statistical = 0.0;
  double frac_undecided = 0.0;
  int trials = 0;
  double mean_linf_l2 = 0.0;
};

struct SweepResult {
  std::vector<TrialRecord> records;  // sorted by (n, alpha_nominal, trial)
  std::vector<SummaryRow> summary;   // sorted by (n, alpha_nominal)
};

// m = max(1, round(alpha n)).
int dimension_for(double alpha, int n);

// master/n=<n>/alpha=<alpha>/trial=<k>
SeedPath trial_seed(std::uint64_t master, int n, double alpha, int trial);

struct TrialSample {
  Matrix gamma;
  std::optional<VectorEnsemble> ensemble;   // Independent and Bernoulli modes
  std::optional<CoupledSvdSample> coupled;  // Coupled mode
};

// Independent: gram of a Haar-sphere ensemble from seed/"ensemble".
// Bernoulli: gram of a Bernoulli ensemble from seed/"ensemble".
// Coupled: truncated, normalized rows of U and V from seed/"coupled"; m <= n.
TrialSample sample_trial(SamplingMode mode, int n, int m, const SeedPath& seed);

// Classification context for one trial; pointers refer into `sample`.
ClassifyContext make_context(const ExperimentConfig& config, const SeedPath& seed, int m,
                             const TrialSample& sample);

// Samples and classifies one trial of a sweep. Errors become an Undecided
// record with a note.
TrialRecord run_trial(const ExperimentConfig& config, int n, double alpha, int trial);

// Output is independent of the thread count.
SweepResult run_phase_sweep(const ExperimentConfig& config);

// Per-cell verdict fractions, a fold over records sorted by (n, alpha, trial).
std::vector<SummaryRow> summarize(std::vector<TrialRecord> records);

}  // namespace qcorr

#endif  // QCORR_EXPERIMENTS_HPP_
