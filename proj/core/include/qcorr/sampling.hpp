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

#ifndef QCORR_SAMPLING_HPP_
#define QCORR_SAMPLING_HPP_

#include "qcorr/correlations.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/rng.hpp"

namespace qcorr {

// A gaussian matrix together with a singular value decomposition
// a = u * diag(sigma) * v^T whose singular vectors carry independent random
// signs, which makes u and v independent Haar orthogonal matrices.
struct CoupledSvdSample {
  Matrix a;
  Matrix u;
  Matrix v;
  Vector sigma;  // decreasing, nonnegative

  int n() const { return static_cast<int>(a.rows()); }
};

// I.i.d. standard normal entries, filled row by row from one stream.
Matrix sample_gaussian_matrix(int rows, int cols, const SeedPath& seed);

// n vectors u_i from seed/"u" and n vectors v_j from seed/"v", each a
// normalized gaussian vector in R^m, i.e. uniform on the sphere.
VectorEnsemble sample_haar_sphere_ensemble(int n, int m, const SeedPath& seed);

// Every vector is (1/sqrt(m)) (+-1, ..., +-1) with fair independent signs.
VectorEnsemble sample_bernoulli_ensemble(int n, int m, const SeedPath& seed);

// Orthonormalizes the columns of g left to right (two passes of classical
// Gram-Schmidt per column). The implied triangular factor has a positive
// diagonal, so the output is unique; for gaussian g it is Haar on O(n).
// Throws DegenerateInputError when a column is numerically dependent on the
// previous ones.
Matrix gram_schmidt(const Matrix& g);

// Same as gram_schmidt restricted to the first `cols` columns of g. Column k
// of the result depends only on columns 0..k of g.
Matrix gram_schmidt_leading(const Matrix& g, int cols);

// Haar-distributed orthogonal matrix: gram_schmidt of a gaussian matrix.
Matrix sample_haar_orthogonal(int n, const SeedPath& seed);

// n x n gaussian a (from seed/"a") and its SVD; the sign of each singular
// pair is first normalized (first nonzero coordinate of the right vector
// positive) and then flipped with probability 1/2 (seed/"signs").
CoupledSvdSample sample_coupled_svd(int n, const SeedPath& seed);

// Row i of the result is the first m coordinates of row i of `rows`,
// rescaled to unit length. Throws DegenerateInputError for a truncated row
// of norm below 1e-12.
Matrix truncate_and_normalize_rows(const Matrix& rows, int m);

// Same truncation without the rescaling; used to study row-norm
// concentration.
Vector truncated_row_norms(const Matrix& rows, int m);

}  // namespace qcorr

#endif  // QCORR_SAMPLING_HPP_
