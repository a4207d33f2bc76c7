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

#ifndef QCORR_VALUES_HPP_
#define QCORR_VALUES_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "qcorr/correlations.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/rng.hpp"
#include "qcorr/sampling.hpp"

namespace qcorr {

// Bounds on the Grothendieck constant K_G.
inline constexpr double kGrothendieckLower = 1.67696;
inline constexpr double kGrothendieckUpper = 1.78221;
// omega(A) <= kGaussianClassicalConstant * n^{3/2} with probability 1 - o(1)
// for an n x n gaussian A.
inline constexpr double kGaussianClassicalConstant = 1.6651;
// Largest n accepted by the exponential-time routines.
inline constexpr int kMaxExactSize = 20;

// ---------------------------------------------------------------------------
// Classical value
// ---------------------------------------------------------------------------

struct ClassicalValue {
  double omega = 0.0;
  SignPair argmax;
};

// omega(A) = max over sign vectors s, t of s^T A t, which is also the
// l1 (x)_eps l1 norm of A. Enumerates s with s_0 = +1 in Gray-code order and
// picks t_j = sign(sum_i a_ij s_i), sign(0) = +1. The first maximizer in
// enumeration order wins. Throws SizeGuardError for n > 20.
ClassicalValue classical_value_exact(const Matrix& a);
ClassicalValue classical_value_exact(const BellWitness& a);

// Up to k sign pairs (one per s, s_0 = +1) with the largest s^T A t, best
// first. Used as the separation oracle of pi_norm_exact.
std::vector<std::pair<double, SignPair>> best_sign_pairs(const Matrix& a, int k);

// ---------------------------------------------------------------------------
// Quantum value bounds
// ---------------------------------------------------------------------------

struct AscentOptions {
  int rank = 0;  // 0 means 2n
  int max_iters = 2000;
  double tol = 1e-13;
  int restarts = 5;
  SeedPath seed = SeedPath(0).child("ascent");
};

struct QuantumLowerBound {
  double value = 0.0;
  Matrix u;  // n x rank, unit rows
  Matrix v;
  // Objective after every half-step of the best restart.
  std::vector<double> trace;
  int iterations = 0;
};

// Alternating exact maximization over the v block and the u block of
// sum_ij a_ij <u_i, v_j>. Always a valid lower bound on omega*(A).
QuantumLowerBound quantum_value_lower(const Matrix& a, const AscentOptions& options = {});

struct DualDescentOptions {
  int max_iters = 1500;
  double tol = 1e-10;
};

struct QuantumUpperBound {
  double value = 0.0;
  Vector lambda;               // 2n multipliers, value = sum(lambda)
  double min_eigenvalue = 0;   // of diag(lambda) - M(A); >= -1e-8
  bool eigen_converged = true;
  int iterations = 0;
};

// Symmetric 2n x 2n matrix with off-diagonal blocks A/2 and A^T/2.
Matrix bell_block_matrix(const Matrix& a);

// Subgradient descent on d for g(d) = sum(d) + 2n * lambda_max(M(A) - diag d).
// Every iterate yields the feasible dual point lambda = d + lambda_max * 1, so
// the returned value bounds omega*(A) from above regardless of convergence.
QuantumUpperBound quantum_value_upper(const Matrix& a, const DualDescentOptions& options = {});

struct QuantumValueBounds {
  double lower = 0.0;
  double upper = 0.0;
  Matrix u;
  Matrix v;
  Vector lambda;
};

QuantumValueBounds quantum_value_bounds(const Matrix& a, const AscentOptions& ascent = {},
                                        const DualDescentOptions& descent = {});

// ---------------------------------------------------------------------------
// Norms and locality certificates
// ---------------------------------------------------------------------------

// max_i ||row_i||_2
double linf_l2_norm(const Matrix& m);
// sum_i ||row_i||_2
double l1_l2_norm(const Matrix& m);

// LocalNormBound when sqrt(2) * linf_l2_norm(gamma) <= 1 (then the pi-norm is
// at most 1 and gamma is local). O(n^2), one-sided.
std::optional<Certificate> certify_local_fast(const Matrix& gamma);

struct PiNormOptions {
  double tol = 1e-10;     // stop once omega(A) <= 1 + tol
  int max_cuts = 0;       // 0 means 50 n^2
  int cuts_per_round = 0; // 0 means n
  // Early exit once the bracket [lower, upper] settles the comparison:
  // lower > stop_above or upper <= stop_below.
  std::optional<double> stop_above;
  std::optional<double> stop_below;
};

struct PiNormResult {
  // Projective norm of gamma in l_inf (x)_pi l_inf. When converged, equals the
  // decomposition total; otherwise the true norm lies in [lower, upper] and
  // value is the bound that decided the early exit (upper by default).
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool converged = false;
  bool stopped_early = false;  // by stop_above or stop_below
  LocalDecomposition decomposition;
  // Dual matrix rescaled so that omega <= 1; classical bound is Exact.
  BellWitness dual_witness;
  int iterations = 0;  // cuts generated
  int pivots = 0;
};

// Column generation on min sum(lambda) s.t. sum_k lambda_k s_k t_k^T = gamma,
// which is the cutting-plane scheme on the dual max <A, gamma> over the box
// |a_ij| <= 1 cut by s^T A t <= 1. The box columns (unit matrices e_i e_j^T)
// give the initial feasible basis. Throws SizeGuardError for n > 20.
PiNormResult pi_norm_exact(const Matrix& gamma, const PiNormOptions& options = {});

// ---------------------------------------------------------------------------
// Nonlocality certificates
// ---------------------------------------------------------------------------

struct ChshOptions {
  enum class Mode { kAuto, kFull, kSampled };
  Mode mode = Mode::kAuto;
  int full_scan_limit = 512;  // kAuto switches to sampling above this n
  std::int64_t samples = 1'000'000;
  SeedPath seed = SeedPath(0).child("chsh");
  double margin = tol::kStrictMargin;
};

struct ChshScan {
  double value = 0.0;  // best CHSH value found
  NonlocalChsh best;
  bool sampled = false;
  std::int64_t blocks_examined = 0;
};

// Full mode is exhaustive over all row pairs and column pairs; the reported
// block is the first row pair, in lexicographic order, attaining the maximum.
// Sampled mode draws `samples` uniform blocks from `seed`.
ChshScan chsh_scan(const Matrix& gamma, const ChshOptions& options = {});

// NonlocalCHSH when the scan finds a value above 2 + margin.
std::optional<Certificate> certify_nonlocal_chsh(const Matrix& gamma,
                                                 const ChshOptions& options = {});

enum class ThresholdMode { kAsymptotic, kFiniteN };

// Asymptotic: 1.6651 n^{3/2}. Finite-n: (2 sqrt(ln 2) + 2 sqrt(ln n)/sqrt(n)) n^{3/2}.
double statistical_threshold(int n, ThresholdMode mode = ThresholdMode::kAsymptotic);

struct CoupledWitness {
  BellWitness witness;  // the gaussian matrix, Statistical bound
  Matrix gamma;         // from truncated, normalized rows of U and V
  double inner_product = 0.0;
  // <A, (n/m) U_m V_m^T> = (n/m) sum_{k<m} sigma_k: the unnormalized
  // correlation with rows rescaled by sqrt(n/m).
  double scaled_inner_product = 0.0;
  double threshold = 0.0;
  bool statistically_nonlocal = false;
};

CoupledWitness coupled_svd_witness(const CoupledSvdSample& sample, int m,
                                   ThresholdMode mode = ThresholdMode::kAsymptotic,
                                   double margin = tol::kStrictMargin);

}  // namespace qcorr

#endif  // QCORR_VALUES_HPP_
