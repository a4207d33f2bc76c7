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
#include "qcorr/rmt.hpp"
#include "qcorr/sampling.hpp"

namespace qcorr {
namespace {

TEST(MpFraction, Endpoints) {
  EXPECT_NEAR(mp_fraction(0.0), 1.0, 1e-9);
  EXPECT_NEAR(mp_fraction(2.0), 0.0, 1e-9);
}

TEST(MpFraction, MatchesRiemannOracleAtOne) {
  EXPECT_NEAR(mp_fraction(1.0), oracle::mp_riemann(1.0, 10'000'000), 1e-8);
}

TEST(MpFraction, MatchesClosedForm) {
  for (int k = 0; k <= 40; ++k) {
    const double c = 0.05 * k;
    EXPECT_NEAR(mp_fraction(c), oracle::mp_closed_form(c), 1e-10) << c;
  }
}

TEST(MpFraction, MonotoneNonincreasing) {
  double previous = 1.0 + 1e-12;
  for (int k = 0; k <= 200; ++k) {
    const double f = mp_fraction(0.01 * k);
    EXPECT_LE(f, previous);
    previous = f;
  }
}

TEST(MpFraction, RangeChecked) {
  EXPECT_THROW(mp_fraction(-0.1), ArgumentError);
  EXPECT_THROW(mp_fraction(2.1), ArgumentError);
}

TEST(MpInverse, RoundTrips) {
  for (double a : {0.1, 0.5, 0.9}) EXPECT_NEAR(mp_fraction(mp_inverse(a)), a, 1e-8);
  EXPECT_NEAR(mp_inverse(mp_fraction(1.0)), 1.0, 1e-8);
}

TEST(MpInverse, ApproachesTwo) {
  const double a = mp_inverse(1e-2);
  const double b = mp_inverse(1e-3);
  const double c = mp_inverse(1e-4);
  EXPECT_LT(a, b);
  EXPECT_LT(b, c);
  EXPECT_LT(c, 2.0);
  EXPECT_GT(c, 1.95);
}

TEST(MpInverse, RangeChecked) {
  EXPECT_THROW(mp_inverse(0.0), ArgumentError);
  EXPECT_THROW(mp_inverse(1.0), ArgumentError);
}

TEST(MpCurve, Tabulates) {
  const MpCurve curve = MpCurve::tabulate(11);
  ASSERT_EQ(curve.samples.size(), 11u);
  EXPECT_EQ(curve.samples.front().first, 0.0);
  EXPECT_EQ(curve.samples.back().first, 2.0);
  EXPECT_NEAR(curve.samples[5].second, mp_fraction(1.0), 1e-12);
}

TEST(Theta, AtOne) { EXPECT_NEAR(theta(1.0), std::sqrt(2.0 / 3.0), 1e-12); }

TEST(Theta, SmallAlphaAsymptotics) {
  EXPECT_NEAR(theta(1e-4) / std::sqrt(1e-4 / 2.0), 1.0, 1e-3);
  EXPECT_NEAR(theta(1e-8) / std::sqrt(1e-8 / 2.0), 1.0, 1e-7);
  // The series branch and the direct branch agree across the switch.
  EXPECT_NEAR(theta(0.999999e-6), theta(1.000001e-6), 1e-9);
}

TEST(Theta, MonotoneAndIdentity) {
  double previous = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double a = 0.01 * k;
    const double t = theta(a);
    EXPECT_GT(t, previous);
    previous = t;
    EXPECT_NEAR(t * t + 4.0 / 3.0 * (1.0 - std::pow(1.0 - a, 1.5)) / a, 2.0, 1e-12);
    EXPECT_NEAR(t, oracle::theta_naive(a), 1e-10);
  }
}

TEST(Theta, RangeChecked) {
  EXPECT_THROW(theta(0.0), ArgumentError);
  EXPECT_THROW(theta(1.5), ArgumentError);
}

TEST(Alpha0, RootOfTheAsymptoticInequality) {
  const double a0 = alpha0_solve();
  EXPECT_NEAR(alpha0_gap(a0), 0.0, 1e-9);
  // Frozen value of the crossing point.
  EXPECT_NEAR(a0, 0.004455158, 1e-6);
}

TEST(Alpha0, Bracketing) {
  const double a0 = alpha0_solve();
  EXPECT_GT(alpha0_gap(a0 / 2.0), 0.0);
  EXPECT_LT(alpha0_gap(2.0 * a0), 0.0);
}

TEST(Alpha0, GrowsWhenTheConstantShrinks) {
  EXPECT_GT(alpha0_solve(1.0), alpha0_solve(1.78222));
  EXPECT_NEAR(alpha0_solve(1.0), 0.0104643, 1e-6);
}

TEST(Decoupling, ScaledIdentityHasZeroResidual) {
  const int n = 6;
  const Matrix g = std::sqrt(static_cast<double>(n)) * Matrix::Identity(n, n);
  const DecouplingReport r = decoupling_residual(g, 3);
  EXPECT_NEAR(r.residual, 0.0, 1e-14);
  EXPECT_EQ(r.m, 3);
  EXPECT_DOUBLE_EQ(r.alpha, 0.5);
}

TEST(Decoupling, TwoByTwoResidualIsExact) {
  // G = Q * R with Q a rotation; the residual is the row norm of G - sqrt(2) Q.
  const double c = std::cos(0.3);
  const double s = std::sin(0.3);
  Matrix q(2, 2);
  q << c, -s, s, c;
  Matrix r(2, 2);
  r << 1.7, 0.4, 0.0, 0.9;
  const Matrix g = q * r;
  const Matrix diff = g - std::sqrt(2.0) * q;
  const double expected = std::max(diff.row(0).norm(), diff.row(1).norm()) / std::sqrt(2.0);
  const DecouplingReport rep = decoupling_residual(g, 2);
  EXPECT_NEAR(rep.residual, expected, 1e-12);
  EXPECT_NEAR(rep.ratio, expected / theta(1.0), 1e-12);
}

TEST(Decoupling, IgnoresTrailingColumns) {
  const int n = 80;
  const int m = 30;
  Matrix g = sample_gaussian_matrix(n, n, SeedPath(1));
  const DecouplingReport a = decoupling_residual(g, m);
  g.rightCols(n - m) = sample_gaussian_matrix(n, n - m, SeedPath(2));
  const DecouplingReport b = decoupling_residual(g, m);
  EXPECT_EQ(a.residual, b.residual);
}

TEST(Decoupling, RatioIsOrderOne) {
  const Matrix g = sample_gaussian_matrix(300, 300, SeedPath(3));
  const DecouplingReport r = decoupling_residual(g, 150);
  EXPECT_GT(r.ratio, 0.8);
  EXPECT_LT(r.ratio, 1.6);
  EXPECT_GE(r.residual, 0.0);
}

TEST(EmpiricalFraction, CountsWithTolerance) {
  Vector sigma(4);
  sigma << 4.0, 2.0, 1.0, 0.5;
  EXPECT_DOUBLE_EQ(empirical_singular_fraction(sigma, 4, 1.0), 0.5);
  EXPECT_DOUBLE_EQ(empirical_singular_fraction(sigma, 4, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(empirical_singular_fraction(sigma, 4, 0.5 + 1e-14), 0.75);
}

TEST(Concentration, GaussianNorm) {
  ConcentrationParams p;
  p.m = 400;
  p.epsilon = 0.3;
  const auto r = concentration_check(ConcentrationKind::kGaussianNorm, p, 10000, SeedPath(4));
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.bound, std::exp(-9.0), 1e-15);
  EXPECT_LE(r.frequency, r.bound + 3.0 * r.sigma);
}

TEST(Concentration, ChernoffAgainstNormalTail) {
  ConcentrationParams p;
  p.t = 2.0;
  const auto r = concentration_check(ConcentrationKind::kChernoff, p, 10000, SeedPath(5));
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.bound, 2.0 * std::exp(-2.0), 1e-15);
  const double tail = oracle::normal_two_sided_tail(2.0);
  EXPECT_NEAR(r.frequency, tail, 4.0 * std::sqrt(tail * (1 - tail) / 10000));
}

TEST(Concentration, Projection) {
  ConcentrationParams p;
  p.n = 400;
  p.m = 100;
  p.rho = 0.5;
  const auto r = concentration_check(ConcentrationKind::kProjection, p, 10000, SeedPath(6));
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.bound, std::exp(-6.25), 1e-15);
}

TEST(Concentration, ParameterRanges) {
  ConcentrationParams p;
  p.epsilon = 1.5;
  EXPECT_THROW(concentration_check(ConcentrationKind::kGaussianNorm, p, 10, SeedPath(7)),
               ArgumentError);
  ConcentrationParams q;
  q.t = 0.5;
  EXPECT_THROW(concentration_check(ConcentrationKind::kChernoff, q, 10, SeedPath(7)),
               ArgumentError);
  ConcentrationParams r;
  EXPECT_THROW(concentration_check(ConcentrationKind::kProjection, r, 0, SeedPath(7)),
               ArgumentError);
}

}  // namespace
}  // namespace qcorr
