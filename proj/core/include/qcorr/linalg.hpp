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

#ifndef QCORR_LINALG_HPP_
#define QCORR_LINALG_HPP_

#include <Eigen/Dense>

namespace qcorr {

// Dense storage throughout. Row-major so that a row is one measurement
// setting's vector and row-wise norms stay contiguous.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

// Centralized numerical tolerances.
namespace tol {
inline constexpr double kUnitNorm = 1e-12;
inline constexpr double kEntryBound = 1e-12;
inline constexpr double kReconstruction = 1e-8;
inline constexpr double kStrictMargin = 1e-8;
inline constexpr double kOrthogonality = 1e-10;
inline constexpr double kRankPivot = 1e-10;
}  // namespace tol

// Frobenius pairing <A, B> = sum_ij a_ij b_ij.
inline double frobenius_inner(const Matrix& a, const Matrix& b) {
  return a.cwiseProduct(b).sum();
}

}  // namespace qcorr

#endif  // QCORR_LINALG_HPP_
