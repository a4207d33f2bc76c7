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

#ifndef QCORR_TESTS_ORACLES_ORACLES_HPP_
#define QCORR_TESTS_ORACLES_ORACLES_HPP_

// Slow, independent reference implementations used only by tests.

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <vector>

#include "qcorr/linalg.hpp"

namespace qcorr::oracle {

// max over all s, t in {-1, 1}^n of s^T A t, by full 2^{2n} enumeration.
inline double brute_force_omega(const Matrix& a) {
  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());
  double best = -std::numeric_limits<double>::infinity();
  for (std::uint32_t sm = 0; sm < (1u << rows); ++sm) {
    for (std::uint32_t tm = 0; tm < (1u << cols); ++tm) {
      double v = 0.0;
      for (int i = 0; i < rows; ++i) {
        const double si = (sm >> i) & 1u ? -1.0 : 1.0;
        for (int j = 0; j < cols; ++j) {
          const double tj = (tm >> j) & 1u ? -1.0 : 1.0;
          v += si * a(i, j) * tj;
        }
      }
      best = std::max(best, v);
    }
  }
  return best;
}

// Largest CHSH value over all row pairs, column pairs and the eight sign
// placements with an odd number of minus signs; O(n^4).
inline double chsh_quartic(const Matrix& g) {
  const int n = static_cast<int>(g.rows());
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int i2 = 0; i2 < n; ++i2) {
      if (i2 == i) continue;
      for (int j = 0; j < n; ++j) {
        for (int j2 = 0; j2 < n; ++j2) {
          if (j2 == j) continue;
          const double x[4] = {g(i, j), g(i2, j), g(i, j2), g(i2, j2)};
          for (int mask = 0; mask < 16; ++mask) {
            if (__builtin_popcount(mask) % 2 == 0) continue;
            double v = 0.0;
            for (int k = 0; k < 4; ++k) v += (mask >> k) & 1 ? -x[k] : x[k];
            best = std::max(best, std::abs(v));
          }
        }
      }
    }
  }
  return best;
}

// pi-norm of a 2 x 2 matrix as max <A, gamma> over the polytope
// {A : s^T A t <= 1 for all sign vectors}, by enumerating its vertices.
inline double pi_norm_2x2_vertices(const Matrix& gamma) {
  std::vector<Eigen::Vector4d> cons;
  for (int s0 : {-1, 1}) {
    for (int s1 : {-1, 1}) {
      for (int t0 : {-1, 1}) {
        for (int t1 : {-1, 1}) {
          cons.emplace_back(s0 * t0, s0 * t1, s1 * t0, s1 * t1);
        }
      }
    }
  }
  const Eigen::Vector4d g(gamma(0, 0), gamma(0, 1), gamma(1, 0), gamma(1, 1));
  const int k = static_cast<int>(cons.size());
  double best = -std::numeric_limits<double>::infinity();
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      for (int c = b + 1; c < k; ++c) {
        for (int d = c + 1; d < k; ++d) {
          Eigen::Matrix4d m;
          m.row(0) = cons[a].transpose();
          m.row(1) = cons[b].transpose();
          m.row(2) = cons[c].transpose();
          m.row(3) = cons[d].transpose();
          Eigen::FullPivLU<Eigen::Matrix4d> lu(m);
          if (!lu.isInvertible()) continue;
          const Eigen::Vector4d x = lu.solve(Eigen::Vector4d::Ones());
          bool feasible = true;
          for (const auto& row : cons) feasible = feasible && row.dot(x) <= 1.0 + 1e-9;
          if (feasible) best = std::max(best, g.dot(x));
        }
      }
    }
  }
  return best;
}

// Marchenko-Pastur tail mass by a midpoint Riemann sum of the density on
// [C^2, 4] with `points` cells.
inline double mp_riemann(double c, long points) {
  const double lo = c * c;
  const double h = (4.0 - lo) / static_cast<double>(points);
  double sum = 0.0;
  for (long k = 0; k < points; ++k) {
    const double x = lo + (static_cast<double>(k) + 0.5) * h;
    sum += std::sqrt(4.0 / x - 1.0);
  }
  return sum * h / (2.0 * std::numbers::pi);
}

// Closed form of the same integral: with u = sqrt(x) it is
// (1/pi) int_C^2 sqrt(4 - u^2) du.
inline double mp_closed_form(double c) {
  return (std::numbers::pi - 0.5 * c * std::sqrt(4.0 - c * c) - 2.0 * std::asin(c / 2.0)) /
         std::numbers::pi;
}

// 2 - (4/3)(1 - (1-a)^{3/2}) / a, evaluated naively.
inline double theta_naive(double alpha) {
  return std::sqrt(2.0 - 4.0 / 3.0 * (1.0 - std::pow(1.0 - alpha, 1.5)) / alpha);
}

// Two-sided standard normal tail P(|Z| >= t).
inline double normal_two_sided_tail(double t) { return std::erfc(t / std::sqrt(2.0)); }

}  // namespace qcorr::oracle

#endif  // QCORR_TESTS_ORACLES_ORACLES_HPP_
