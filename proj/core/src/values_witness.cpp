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

#include <cmath>
#include <string>

#include "qcorr/errors.hpp"
#include "qcorr/values.hpp"

namespace qcorr {

double statistical_threshold(int n, ThresholdMode mode) {
  if (n < 1) throw ArgumentError("statistical_threshold: n must be positive");
  const double scale = std::pow(static_cast<double>(n), 1.5);
  if (mode == ThresholdMode::kAsymptotic) return kGaussianClassicalConstant * scale;
  const double nd = static_cast<double>(n);
  return (2.0 * std::sqrt(std::log(2.0)) + 2.0 * std::sqrt(std::log(nd)) / std::sqrt(nd)) * scale;
}

CoupledWitness coupled_svd_witness(const CoupledSvdSample& sample, int m, ThresholdMode mode,
                                   double margin) {
  const int n = sample.n();
  if (m < 1 || m > n) {
    throw ArgumentError("coupled_svd_witness: need 1 <= m <= n, got m = " + std::to_string(m));
  }
  CoupledWitness out;
  const Matrix u = truncate_and_normalize_rows(sample.u, m);
  const Matrix v = truncate_and_normalize_rows(sample.v, m);
  out.gamma = u * v.transpose();
  out.gamma = out.gamma.cwiseMax(-1.0).cwiseMin(1.0);
  out.inner_product = frobenius_inner(sample.a, out.gamma);
  out.scaled_inner_product =
      static_cast<double>(n) / m * sample.sigma.head(m).sum();
  out.threshold = statistical_threshold(n, mode);
  out.statistically_nonlocal = out.inner_product > out.threshold * (1.0 + margin);
  out.witness.entries = sample.a;
  out.witness.classical_bound = StatisticalBound{
      out.threshold, mode == ThresholdMode::kAsymptotic
                         ? "omega(A) <= 1.6651 n^{3/2} with probability 1 - o(1)"
                         : "omega(A) <= (2 sqrt(ln 2) + 2 sqrt(ln n / n)) n^{3/2} w.h.p."};
  return out;
}

}  // namespace qcorr
