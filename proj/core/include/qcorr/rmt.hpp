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

#ifndef QCORR_RMT_HPP_
#define QCORR_RMT_HPP_

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "qcorr/linalg.hpp"
#include "qcorr/rng.hpp"
#include "qcorr/sampling.hpp"

namespace qcorr {

// Asymptotic fraction of singular values of an n x n standard gaussian matrix
// that are at least C sqrt(n):
//   f(C) = (1 / 2pi) int_{C^2}^{4} sqrt(4/x - 1) dx,   0 <= C <= 2.
// Throws ArgumentError outside [0, 2].
double mp_fraction(double c, double tol = 1e-10);

// delta in [0, 2] with f(delta) = alpha, 0 < alpha < 1.
double mp_inverse(double alpha);

// f sampled on a grid, for plotting.
struct MpCurve {
  double tolerance = 1e-10;
  std::vector<std::pair<double, double>> samples;  // (C, f(C))

  static MpCurve tabulate(int points, double tolerance = 1e-10);
};

// theta(alpha) = sqrt(2 - (4/3) (1 - (1 - alpha)^{3/2}) / alpha), 0 < alpha <= 1.
double theta(double alpha);

// Crossing point of mp_inverse(alpha) = c (1 + (2 theta + theta^2) K), found
// by bisection. The left side falls and the right side grows with alpha.
double alpha0_solve(double k_g_upper = 1.78222, double c_classical = 1.6651);

// mp_inverse(alpha) - c (1 + (2 theta + theta^2) K); positive below alpha0.
double alpha0_gap(double alpha, double k_g_upper = 1.78222, double c_classical = 1.6651);

struct DecouplingReport {
  int n = 0;
  int m = 0;
  double alpha = 0.0;
  double residual = 0.0;     // sup_i |first m entries of row_i(G - sqrt(n) U)| / sqrt(m)
  double theta_alpha = 0.0;
  double ratio = 0.0;        // residual / theta_alpha
  int worst_row = 0;
};

// U is the Gram-Schmidt orthogonalization of the columns of G; only the
// first m columns are computed since they depend only on the first m
// columns of G.
DecouplingReport decoupling_residual(const Matrix& g, int m);

// Fraction of entries of sigma with sigma_k >= C sqrt(n) - 1e-12.
double empirical_singular_fraction(const Vector& sigma, int n, double c);
double empirical_singular_fraction(const CoupledSvdSample& sample, double c);

enum class ConcentrationKind { kGaussianNorm, kChernoff, kProjection };

std::string_view to_string(ConcentrationKind kind);

struct ConcentrationParams {
  int n = 400;            // ambient dimension (projection)
  int m = 100;            // vector length (gaussian_norm) or subspace dimension
  double epsilon = 0.3;   // gaussian_norm
  double rho = 0.5;       // projection
  double t = 2.0;         // chernoff
  Vector a;               // chernoff coefficients; empty means e_1
};

struct ConcentrationResult {
  ConcentrationKind kind = ConcentrationKind::kGaussianNorm;
  std::int64_t trials = 0;
  std::int64_t hits = 0;
  double frequency = 0.0;
  double bound = 0.0;
  double sigma = 0.0;  // binomial standard deviation at p = min(bound, 1)
  bool pass = false;   // frequency <= bound + 3 sigma
};

// gaussian_norm: P(|g| >= sqrt(m) / sqrt(1 - eps)) <= exp(-eps^2 m / 4), g in R^m.
// chernoff:      P(|sum a_i X_i| >= t) <= 2 exp(-t^2 / (2 |a|^2)), X_i standard normal.
// projection:    P(|P_L u| >= sqrt(m/n) / (1 - rho)) <= exp(-rho^2 m / 4), u uniform
//                on the sphere of R^n, L a fixed m-dimensional coordinate subspace.
// Trial k draws from seed/k.
ConcentrationResult concentration_check(ConcentrationKind kind, const ConcentrationParams& params,
                                        std::int64_t trials, const SeedPath& seed);

}  // namespace qcorr

#endif  // QCORR_RMT_HPP_
