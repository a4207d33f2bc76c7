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

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qcorr/errors.hpp"
#include "qcorr/values.hpp"

namespace qcorr {

double linf_l2_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.rowwise().norm().maxCoeff();
}

double l1_l2_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.rowwise().norm().sum();
}

std::optional<Certificate> certify_local_fast(const Matrix& gamma) {
  const double norm = linf_l2_norm(gamma);
  if (std::sqrt(2.0) * norm <= 1.0) return Certificate{LocalNormBound{norm}};
  return std::nullopt;
}

namespace {

// For a fixed row pair the four CHSH combinations reduce to
// |p_j| + |q_j'| over ordered column pairs j != j', with p = row_a + row_b and
// q = row_a - row_b, so each row pair costs O(n).
void scan_row_pair(const Matrix& gamma, int ra, int rb, std::vector<double>& p,
                   std::vector<double>& q, ChshScan& best) {
  const int n = static_cast<int>(gamma.cols());
  const double* x = gamma.row(ra).data();
  const double* y = gamma.row(rb).data();
  int p1 = -1, p2 = -1, q1 = -1, q2 = -1;
  for (int j = 0; j < n; ++j) {
    p[j] = std::abs(x[j] + y[j]);
    q[j] = std::abs(x[j] - y[j]);
    if (p1 < 0 || p[j] > p[p1]) {
      p2 = p1;
      p1 = j;
    } else if (p2 < 0 || p[j] > p[p2]) {
      p2 = j;
    }
    if (q1 < 0 || q[j] > q[q1]) {
      q2 = q1;
      q1 = j;
    } else if (q2 < 0 || q[j] > q[q2]) {
      q2 = j;
    }
  }
  int cp, cq;
  if (p1 != q1) {
    cp = p1;
    cq = q1;
  } else if (p[p1] + q[q2] >= p[p2] + q[q1]) {
    cp = p1;
    cq = q2;
  } else {
    cp = p2;
    cq = q1;
  }
  const int ca = std::min(cp, cq);
  const int cb = std::max(cp, cq);
  const double value = chsh_block_value(gamma, ra, rb, ca, cb);
  if (value > best.value) {
    best.value = value;
    best.best = NonlocalChsh{ra, rb, ca, cb, value};
  }
}

}  // namespace

ChshScan chsh_scan(const Matrix& gamma, const ChshOptions& options) {
  const int n = static_cast<int>(gamma.rows());
  if (gamma.cols() != n) throw DimensionError("chsh_scan: gamma must be square");
  if (n < 2) throw ArgumentError("chsh_scan: need n >= 2");

  ChshScan out;
  out.value = -1.0;
  const bool sampled = options.mode == ChshOptions::Mode::kSampled ||
                       (options.mode == ChshOptions::Mode::kAuto && n > options.full_scan_limit);
  out.sampled = sampled;
  if (!sampled) {
    std::vector<double> p(n), q(n);
    for (int ra = 0; ra < n; ++ra) {
      for (int rb = ra + 1; rb < n; ++rb) scan_row_pair(gamma, ra, rb, p, q, out);
    }
    out.blocks_examined = static_cast<std::int64_t>(n) * (n - 1) / 2 * n * (n - 1) / 2;
    return out;
  }

  if (options.samples < 1) throw ArgumentError("chsh_scan: samples must be >= 1");
  RandomStream stream(options.seed);
  auto distinct_pair = [&](int& a, int& b) {
    a = static_cast<int>(stream.below(n));
    b = static_cast<int>(stream.below(n - 1));
    if (b >= a) ++b;
    if (a > b) std::swap(a, b);
  };
  for (std::int64_t s = 0; s < options.samples; ++s) {
    int ra, rb, ca, cb;
    distinct_pair(ra, rb);
    distinct_pair(ca, cb);
    const double value = chsh_block_value(gamma, ra, rb, ca, cb);
    if (value > out.value) {
      out.value = value;
      out.best = NonlocalChsh{ra, rb, ca, cb, value};
    }
  }
  out.blocks_examined = options.samples;
  return out;
}

std::optional<Certificate> certify_nonlocal_chsh(const Matrix& gamma, const ChshOptions& options) {
  const ChshScan scan = chsh_scan(gamma, options);
  if (scan.value > 2.0 + options.margin) return Certificate{scan.best};
  return std::nullopt;
}

}  // namespace qcorr
