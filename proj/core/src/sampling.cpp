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

#include "qcorr/sampling.hpp"

#include <cmath>
#include <string>

#include "qcorr/errors.hpp"

namespace qcorr {
namespace {

void require_positive(int value, const char* what) {
  if (value < 1) {
    throw ArgumentError(std::string(what) + " must be >= 1, got " + std::to_string(value));
  }
}

Matrix sample_sphere_rows(int n, int m, const SeedPath& seed) {
  RandomStream stream(seed);
  Matrix out(n, m);
  bool warned = false;
  for (int i = 0; i < n; ++i) {
    for (;;) {
      for (int k = 0; k < m; ++k) out(i, k) = stream.gaussian();
      const double norm = out.row(i).norm();
      if (norm > 0.0) {
        out.row(i) /= norm;
        break;
      }
      if (!warned) {
        log_warning("zero gaussian vector drawn at " + seed.to_string() + ", resampling");
        warned = true;
      }
    }
  }
  return out;
}

Matrix sample_sign_rows(int n, int m, const SeedPath& seed) {
  RandomStream stream(seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  Matrix out(n, m);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < m; ++k) out(i, k) = scale * stream.sign();
  }
  return out;
}

}  // namespace

Matrix sample_gaussian_matrix(int rows, int cols, const SeedPath& seed) {
  require_positive(rows, "rows");
  require_positive(cols, "cols");
  RandomStream stream(seed);
  Matrix out(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) out(i, j) = stream.gaussian();
  }
  return out;
}

VectorEnsemble sample_haar_sphere_ensemble(int n, int m, const SeedPath& seed) {
  require_positive(n, "n");
  require_positive(m, "m");
  return VectorEnsemble(sample_sphere_rows(n, m, seed.child("u")),
                        sample_sphere_rows(n, m, seed.child("v")));
}

VectorEnsemble sample_bernoulli_ensemble(int n, int m, const SeedPath& seed) {
  require_positive(n, "n");
  require_positive(m, "m");
  return VectorEnsemble(sample_sign_rows(n, m, seed.child("u")),
                        sample_sign_rows(n, m, seed.child("v")));
}

Matrix gram_schmidt_leading(const Matrix& g, int cols) {
  const int n = static_cast<int>(g.rows());
  if (n < 1 || cols < 1 || cols > g.cols() || cols > n) {
    throw ArgumentError("gram_schmidt: need 1 <= cols <= min(rows, columns)");
  }
  // Work on the transpose so each basis vector is a contiguous row.
  Matrix q = g.leftCols(cols).transpose();
  for (int k = 0; k < cols; ++k) {
    const double original = q.row(k).norm();
    for (int pass = 0; pass < 2 && k > 0; ++pass) {
      const Vector coeffs = q.topRows(k) * q.row(k).transpose();
      q.row(k) -= (q.topRows(k).transpose() * coeffs).transpose();
    }
    const double pivot = q.row(k).norm();
    if (!(pivot > tol::kRankPivot * original) || original == 0.0) {
      throw DegenerateInputError("gram_schmidt: column " + std::to_string(k) +
                                 " is numerically dependent on the previous columns");
    }
    q.row(k) /= pivot;
  }
  return q.transpose();
}

Matrix gram_schmidt(const Matrix& g) {
  if (g.rows() != g.cols()) throw DimensionError("gram_schmidt: matrix must be square");
  return gram_schmidt_leading(g, static_cast<int>(g.cols()));
}

Matrix sample_haar_orthogonal(int n, const SeedPath& seed) {
  return gram_schmidt(sample_gaussian_matrix(n, n, seed));
}

CoupledSvdSample sample_coupled_svd(int n, const SeedPath& seed) {
  require_positive(n, "n");
  CoupledSvdSample out;
  out.a = sample_gaussian_matrix(n, n, seed.child("a"));

  const Eigen::MatrixXd a_col = out.a;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a_col, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success) {
    throw NumericalError("sample_coupled_svd: SVD did not converge at " + seed.to_string());
  }
  out.u = svd.matrixU();
  out.v = svd.matrixV();
  out.sigma = svd.singularValues();

  for (int k = 0; k + 1 < n; ++k) {
    if (!(out.sigma(k) > out.sigma(k + 1))) {
      throw DegenerateInputError("sample_coupled_svd: repeated singular value at index " +
                                 std::to_string(k));
    }
  }

  RandomStream signs(seed.child("signs"));
  for (int k = 0; k < n; ++k) {
    int first = 0;
    while (first < n && out.v(first, k) == 0.0) ++first;
    const double canonical = (first < n && out.v(first, k) < 0.0) ? -1.0 : 1.0;
    const double flip = canonical * signs.sign();
    out.u.col(k) *= flip;
    out.v.col(k) *= flip;
  }

  const double scale = out.a.cwiseAbs().maxCoeff();
  const Matrix rebuilt = out.u * out.sigma.asDiagonal() * out.v.transpose();
  const double residual = (out.a - rebuilt).cwiseAbs().maxCoeff();
  if (residual > 1e-8 * scale) {
    throw NumericalError("sample_coupled_svd: reconstruction residual " +
                         std::to_string(residual) + " exceeds 1e-8 * max|a| = " +
                         std::to_string(1e-8 * scale));
  }
  return out;
}

Vector truncated_row_norms(const Matrix& rows, int m) {
  if (m < 1 || m > rows.cols()) {
    throw ArgumentError("truncate: need 1 <= m <= " + std::to_string(rows.cols()));
  }
  return rows.leftCols(m).rowwise().norm();
}

Matrix truncate_and_normalize_rows(const Matrix& rows, int m) {
  const Vector norms = truncated_row_norms(rows, m);
  Matrix out = rows.leftCols(m);
  for (int i = 0; i < out.rows(); ++i) {
    if (!(norms(i) >= 1e-12)) {
      throw DegenerateInputError("truncate_and_normalize_rows: row " + std::to_string(i) +
                                 " has truncated norm below 1e-12");
    }
    out.row(i) /= norms(i);
  }
  return out;
}

}  // namespace qcorr
