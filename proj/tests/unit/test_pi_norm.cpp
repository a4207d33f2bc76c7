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

#include <gtest/gtest.h>

#include <cmath>

#include "oracles/oracles.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/rng.hpp"
#include "qcorr/sampling.hpp"
#include "qcorr/values.hpp"

namespace qcorr {
namespace {

Matrix chsh_gamma() {
  const double r = 1.0 / std::sqrt(2.0);
  Matrix g(2, 2);
  g << r, r, r, -r;
  return g;
}

Matrix random_correlation(int n, int m, const SeedPath& seed) {
  return gram(sample_haar_sphere_ensemble(n, m, seed)).entries();
}

TEST(PiNorm, ChshMatchesVertexOracle) {
  const PiNormResult r = pi_norm_exact(chsh_gamma());
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(oracle::pi_norm_2x2_vertices(chsh_gamma()), std::sqrt(2.0), 1e-9);
}

TEST(PiNorm, TwoByTwoMatchesVertexOracle) {
  for (std::uint64_t k = 0; k < 20; ++k) {
    const Matrix g = random_correlation(2, 2, SeedPath(1).child(k));
    EXPECT_NEAR(pi_norm_exact(g).value, oracle::pi_norm_2x2_vertices(g), 1e-8) << k;
  }
}

TEST(PiNorm, RankOneSignMatrixHasNormOne) {
  SignPair p{{1, -1, 1, 1}, {-1, -1, 1, 1}};
  const PiNormResult r = pi_norm_exact(p.outer());
  EXPECT_NEAR(r.value, 1.0, 1e-9);
  EXPECT_NEAR(pi_norm_exact(Matrix::Identity(2, 2)).value, 1.0, 1e-9);
}

TEST(PiNorm, DecompositionAndDualWitnessAgree) {
  const Matrix g = random_correlation(6, 3, SeedPath(2));
  const PiNormResult r = pi_norm_exact(g);
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(r.lower, r.upper, 1e-8);
  Matrix rebuilt = Matrix::Zero(6, 6);
  for (const auto& term : r.decomposition.terms) {
    EXPECT_GT(term.weight, 0.0);
    rebuilt += term.weight * term.pair.outer();
  }
  EXPECT_LT((rebuilt - g).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_NEAR(r.decomposition.total, r.value, 1e-12);
  const double omega = oracle::brute_force_omega(r.dual_witness.entries);
  EXPECT_LE(omega, 1.0 + 1e-9);
  EXPECT_NEAR(std::get<ExactBound>(r.dual_witness.classical_bound).omega, omega, 1e-12);
  EXPECT_NEAR((r.dual_witness.entries.array() * g.array()).sum(), r.lower, 1e-9);
}

TEST(PiNorm, BernoulliCorrelationsAreLocal) {
  for (int m : {3, 5, 50}) {
    const VectorEnsemble e = sample_bernoulli_ensemble(7, m, SeedPath(3).child(m));
    const Matrix g = gram(e).entries();
    const PiNormResult r = pi_norm_exact(g);
    EXPECT_LE(r.value, 1.0 + 1e-9) << "m=" << m;
    EXPECT_TRUE(verify_certificate(g, r.decomposition).ok);
  }
}

TEST(PiNorm, KhintchineBound) {
  RandomStream rng(SeedPath(4));
  for (int k = 0; k < 40; ++k) {
    const int n = 2 + static_cast<int>(rng.below(5));
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m(i, j) = 2.0 * rng.uniform() - 1.0;
    }
    m /= linf_l2_norm(m);
    EXPECT_LE(pi_norm_exact(m).value, std::sqrt(2.0) * linf_l2_norm(m) + 1e-6);
  }
}

TEST(PiNorm, DualitySandwich) {
  for (std::uint64_t k = 0; k < 10; ++k) {
    const int n = 3 + static_cast<int>(k % 4);
    const Matrix g = random_correlation(n, 2, SeedPath(5).child(k));
    const double pi = pi_norm_exact(g).value;
    for (std::uint64_t w = 0; w < 5; ++w) {
      Matrix a = sample_gaussian_matrix(n, n, SeedPath(6).child(k).child(w));
      a /= oracle::brute_force_omega(a);
      EXPECT_LE((a.array() * g.array()).sum(), pi + 1e-6);
    }
  }
}

TEST(PiNorm, HomogeneousInScale) {
  const Matrix g = random_correlation(4, 2, SeedPath(7));
  const double base = pi_norm_exact(g).value;
  EXPECT_NEAR(pi_norm_exact(Matrix(0.5 * g)).value, 0.5 * base, 1e-8);
  EXPECT_NEAR(pi_norm_exact(Matrix(-g)).value, base, 1e-8);
}

TEST(PiNorm, LocalIffDecompositionVerifies) {
  for (std::uint64_t k = 0; k < 12; ++k) {
    const Matrix g = random_correlation(5, 1 + static_cast<int>(k % 6), SeedPath(8).child(k));
    const PiNormResult r = pi_norm_exact(g);
    const bool local = r.value <= 1.0;
    const bool verified = verify_certificate(g, r.decomposition).ok;
    EXPECT_EQ(local, verified && r.decomposition.total <= 1.0) << k;
  }
}

TEST(PiNorm, EarlyExitBracketsTheDecision) {
  const Matrix g = random_correlation(8, 2, SeedPath(9));
  const PiNormResult full = pi_norm_exact(g);
  PiNormOptions options;
  options.stop_above = 1.0 + 1e-6;
  options.stop_below = 1.0 + 1e-9;
  const PiNormResult quick = pi_norm_exact(g, options);
  EXPECT_LE(quick.lower, full.value + 1e-9);
  EXPECT_GE(quick.upper, full.value - 1e-9);
  EXPECT_EQ(quick.value > 1.0 + 1e-6, full.value > 1.0 + 1e-6);
}

TEST(PiNorm, SizeGuard) {
  EXPECT_THROW(pi_norm_exact(Matrix::Zero(21, 21)), SizeGuardError);
  EXPECT_THROW(pi_norm_exact(Matrix::Zero(2, 3)), DimensionError);
}

}  // namespace
}  // namespace qcorr
