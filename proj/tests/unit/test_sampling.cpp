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

#include "qcorr/errors.hpp"
#include "qcorr/rmt.hpp"
#include "qcorr/sampling.hpp"

namespace qcorr {
namespace {

TEST(GaussianMatrix, MomentsAtScale) {
  const Matrix a = sample_gaussian_matrix(1000, 1000, SeedPath(1).child("g"));
  const double mean = a.mean();
  const double var = (a.array() - mean).square().mean();
  EXPECT_LT(std::abs(mean), 4e-3);
  EXPECT_NEAR(var, 1.0, 0.02);
  const double m4 = a.array().pow(4).mean();
  EXPECT_NEAR(m4, 3.0, 0.3);
}

TEST(GaussianMatrix, DeterministicAndSeedSensitive) {
  const SeedPath s = SeedPath(5).child("x");
  EXPECT_EQ(sample_gaussian_matrix(7, 3, s), sample_gaussian_matrix(7, 3, s));
  EXPECT_NE(sample_gaussian_matrix(7, 3, s), sample_gaussian_matrix(7, 3, SeedPath(6).child("x")));
}

TEST(GaussianMatrix, ZeroDimensionRejected) {
  EXPECT_THROW(sample_gaussian_matrix(0, 3, SeedPath(1)), ArgumentError);
  EXPECT_THROW(sample_gaussian_matrix(3, 0, SeedPath(1)), ArgumentError);
}

TEST(HaarSphere, UnitVectors) {
  const VectorEnsemble e = sample_haar_sphere_ensemble(50, 7, SeedPath(2));
  for (int i = 0; i < e.n(); ++i) {
    EXPECT_NEAR(e.u().row(i).norm(), 1.0, 1e-12);
    EXPECT_NEAR(e.v().row(i).norm(), 1.0, 1e-12);
  }
}

TEST(HaarSphere, DimensionOneGivesSigns) {
  const VectorEnsemble e = sample_haar_sphere_ensemble(20, 1, SeedPath(3));
  for (int i = 0; i < 20; ++i) EXPECT_EQ(std::abs(e.u()(i, 0)), 1.0);
}

TEST(HaarSphere, InnerProductsCentered) {
  double sum = 0.0;
  const int trials = 10000;
  for (int k = 0; k < trials; ++k) {
    const VectorEnsemble e =
        sample_haar_sphere_ensemble(1, 25, SeedPath(4).child(static_cast<std::uint64_t>(k)));
    sum += e.u().row(0).dot(e.v().row(0));
  }
  EXPECT_LT(std::abs(sum / trials), 3e-2);
}

TEST(Bernoulli, EntriesAndGramLattice) {
  const int m = 6;
  const VectorEnsemble e = sample_bernoulli_ensemble(12, m, SeedPath(5));
  const double a = 1.0 / std::sqrt(static_cast<double>(m));
  EXPECT_TRUE((e.u().cwiseAbs().array() == a).all());
  EXPECT_TRUE((e.v().cwiseAbs().array() == a).all());
  const Matrix g = gram(e).entries();
  for (int i = 0; i < g.rows(); ++i) {
    for (int j = 0; j < g.cols(); ++j) {
      const double k = (g(i, j) + 1.0) * m / 2.0;
      EXPECT_NEAR(k, std::round(k), 1e-12);
    }
  }
}

TEST(GramSchmidt, DiagonalScalingGivesIdentity) {
  Matrix g(2, 2);
  g << 2, 0, 0, 3;
  EXPECT_TRUE(gram_schmidt(g).isApprox(Matrix::Identity(2, 2), 1e-15));
}

TEST(GramSchmidt, OrthogonalAtScaleAndIdempotent) {
  const Matrix g = sample_gaussian_matrix(500, 500, SeedPath(6));
  const Matrix u = gram_schmidt(g);
  const Matrix gram_err = u.transpose() * u - Matrix::Identity(500, 500);
  EXPECT_LT(gram_err.cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT((gram_schmidt(u) - u).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(GramSchmidt, TriangularFactorHasPositiveDiagonal) {
  const Matrix g = sample_gaussian_matrix(30, 30, SeedPath(7));
  const Matrix u = gram_schmidt(g);
  const Matrix r = u.transpose() * g;
  for (int i = 0; i < 30; ++i) {
    EXPECT_GT(r(i, i), 0.0);
    for (int j = 0; j < i; ++j) EXPECT_NEAR(r(i, j), 0.0, 1e-10);
  }
}

TEST(GramSchmidt, LeadingColumnsMatchFull) {
  const Matrix g = sample_gaussian_matrix(40, 40, SeedPath(8));
  EXPECT_LT((gram_schmidt_leading(g, 10) - gram_schmidt(g).leftCols(10)).cwiseAbs().maxCoeff(),
            1e-12);
}

TEST(GramSchmidt, RankDeficiencyDetected) {
  Matrix g = sample_gaussian_matrix(5, 5, SeedPath(9));
  g.col(3) = 2.0 * g.col(1) - g.col(0);
  EXPECT_THROW(gram_schmidt(g), DegenerateInputError);
}

TEST(HaarOrthogonal, IsOrthogonal) {
  const Matrix q = sample_haar_orthogonal(60, SeedPath(10));
  EXPECT_LT((q.transpose() * q - Matrix::Identity(60, 60)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(CoupledSvd, Invariants) {
  const CoupledSvdSample s = sample_coupled_svd(120, SeedPath(11));
  const Matrix rebuilt = s.u * s.sigma.asDiagonal() * s.v.transpose();
  EXPECT_LE((s.a - rebuilt).cwiseAbs().maxCoeff(), 1e-8 * s.a.cwiseAbs().maxCoeff());
  for (int k = 0; k + 1 < s.n(); ++k) EXPECT_GT(s.sigma(k), s.sigma(k + 1));
  EXPECT_GE(s.sigma.minCoeff(), 0.0);
  const Matrix id = Matrix::Identity(120, 120);
  EXPECT_LT((s.u.transpose() * s.u - id).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT((s.v.transpose() * s.v - id).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(CoupledSvd, SignsAreRandomized) {
  const CoupledSvdSample s = sample_coupled_svd(200, SeedPath(12));
  int positive = 0;
  for (int k = 0; k < s.n(); ++k) {
    int first = 0;
    while (s.v(first, k) == 0.0) ++first;
    if (s.v(first, k) > 0.0) ++positive;
  }
  EXPECT_GT(positive, 70);
  EXPECT_LT(positive, 130);
}

TEST(CoupledSvd, GaussianFourthMomentAtMillionSamples) {
  const CoupledSvdSample s = sample_coupled_svd(1000, SeedPath(13));
  const double m2 = s.a.array().square().mean();
  const double m4 = s.a.array().pow(4).mean();
  EXPECT_NEAR(m4 / (m2 * m2), 3.0, 0.3);
  EXPECT_NEAR(empirical_singular_fraction(s, 1.0), mp_fraction(1.0), 0.02);
}

TEST(CoupledSvd, ColumnEntriesCentered) {
  double sum = 0.0;
  double sq = 0.0;
  const int n = 200;
  for (int k = 0; k < 100; ++k) {
    const CoupledSvdSample s = sample_coupled_svd(n, SeedPath(14).child(static_cast<std::uint64_t>(k)));
    sum += s.u.col(0).sum();
    sq += s.u.col(0).squaredNorm();
  }
  EXPECT_LT(std::abs(sum / (100.0 * n)), 0.01);
  EXPECT_NEAR(sq / (100.0 * n), 1.0 / n, 1e-12);
}

TEST(CoupledSvd, Deterministic) {
  const CoupledSvdSample a = sample_coupled_svd(30, SeedPath(15));
  const CoupledSvdSample b = sample_coupled_svd(30, SeedPath(15));
  EXPECT_EQ(a.u, b.u);
  EXPECT_EQ(a.sigma, b.sigma);
}

TEST(Truncate, FullWidthKeepsOrthogonalRows) {
  const Matrix q = sample_haar_orthogonal(20, SeedPath(16));
  EXPECT_LT((truncate_and_normalize_rows(q, 20) - q).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Truncate, IdentityWithOneColumnIsDegenerate) {
  EXPECT_THROW(truncate_and_normalize_rows(Matrix::Identity(4, 4), 1), DegenerateInputError);
}

TEST(Truncate, RowNormsConcentrate) {
  const int n = 400;
  const int m = 100;
  const Matrix q = sample_haar_orthogonal(n, SeedPath(17));
  const Vector norms = truncated_row_norms(q, m);
  const double center = std::sqrt(static_cast<double>(m) / n);
  int inside = 0;
  for (int i = 0; i < n; ++i) {
    if (norms(i) >= 0.8 * center && norms(i) <= 1.25 * center) ++inside;
  }
  EXPECT_GE(inside, static_cast<int>(0.95 * n));
  const Matrix t = truncate_and_normalize_rows(q, m);
  for (int i = 0; i < n; ++i) EXPECT_NEAR(t.row(i).norm(), 1.0, 1e-12);
}

TEST(Truncate, RangeChecked) {
  EXPECT_THROW(truncate_and_normalize_rows(Matrix::Identity(3, 3), 0), ArgumentError);
  EXPECT_THROW(truncate_and_normalize_rows(Matrix::Identity(3, 3), 4), ArgumentError);
}

}  // namespace
}  // namespace qcorr
