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
#include <map>
#include <set>
#include <string>

#include "qcorr/errors.hpp"
#include "qcorr/simplex.hpp"
#include "qcorr/values.hpp"

namespace qcorr {
namespace {

Vector flatten(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unflatten(const Vector& v, int n) {
  return Eigen::Map<const Matrix>(v.data(), n, n);
}

// Sign of s_0 fixed to +1; (-s)(-t)^T is the same matrix.
SignPair canonical(SignPair p) {
  if (!p.s.empty() && p.s[0] < 0) {
    for (auto& x : p.s) x = static_cast<std::int8_t>(-x);
    for (auto& x : p.t) x = static_cast<std::int8_t>(-x);
  }
  return p;
}

// e_i e_j^T = 1/4 (1 + s)(1 + t)^T with s = 2 e_i - 1, t = 2 e_j - 1: four
// sign pairs of weight 1/4. A negative unit flips the row signs.
void add_unit_matrix(int n, int i, int j, double weight, bool negative,
                     std::map<SignPair, double>& terms) {
  std::vector<std::int8_t> ones(n, 1);
  std::vector<std::int8_t> si(n, -1);
  std::vector<std::int8_t> tj(n, -1);
  si[i] = 1;
  tj[j] = 1;
  const std::vector<std::int8_t>* rows[2] = {&ones, &si};
  const std::vector<std::int8_t>* cols[2] = {&ones, &tj};
  for (const auto* r : rows) {
    for (const auto* c : cols) {
      SignPair p{*r, *c};
      if (negative) {
        for (auto& x : p.s) x = static_cast<std::int8_t>(-x);
      }
      terms[canonical(std::move(p))] += 0.25 * weight;
    }
  }
}

}  // namespace

PiNormResult pi_norm_exact(const Matrix& gamma, const PiNormOptions& options) {
  const int n = static_cast<int>(gamma.rows());
  if (gamma.cols() != n || n < 1) throw DimensionError("pi_norm_exact: need a square matrix");
  if (n > kMaxExactSize) {
    throw SizeGuardError("pi_norm_exact: n = " + std::to_string(n) +
                         " exceeds the exact-enumeration limit of 20");
  }
  const int entries = n * n;
  const int max_cuts = options.max_cuts > 0 ? options.max_cuts : 50 * entries;
  const int per_round = options.cuts_per_round > 0 ? options.cuts_per_round : n;

  DenseSimplex lp(flatten(gamma));
  std::vector<int> basis(entries);
  for (int k = 0; k < entries; ++k) {
    Vector plus = Vector::Zero(entries);
    plus(k) = 1.0;
    const int up = lp.add_column(plus, 1.0);
    const int down = lp.add_column(-plus, 1.0);
    basis[k] = gamma.data()[k] >= 0.0 ? up : down;
  }
  lp.set_basis(basis);

  std::vector<SignPair> sign_columns;  // column index 2 * entries + c
  std::set<SignPair> present;

  PiNormResult out;
  out.lower = 0.0;
  // Warm start for the lower bound: gamma itself and the best CHSH block.
  Matrix best_dual = gamma;
  double best_dual_omega = std::max(1e-300, classical_value_exact(gamma).omega);
  out.lower = frobenius_inner(gamma, gamma) / best_dual_omega;
  if (n >= 2) {
    ChshOptions chsh;
    chsh.mode = ChshOptions::Mode::kFull;
    const ChshScan scan = chsh_scan(gamma, chsh);
    Matrix block = Matrix::Zero(n, n);
    const int r[2] = {scan.best.row_a, scan.best.row_b};
    const int c[2] = {scan.best.col_a, scan.best.col_b};
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) block(r[a], c[b]) = (a == 1 && b == 1) ? -1.0 : 1.0;
    }
    // Pick the sign pattern (odd number of minus signs) matching gamma.
    double best_inner = -1.0;
    Matrix best_block = block;
    for (int flip_row = 0; flip_row < 2; ++flip_row) {
      for (int flip_col = 0; flip_col < 2; ++flip_col) {
        for (int global = 0; global < 2; ++global) {
          Matrix cand = block;
          if (flip_row == 1) cand.row(r[0]) *= -1.0;
          if (flip_col == 1) cand.col(c[0]) *= -1.0;
          if (global == 1) cand *= -1.0;
          const double inner = frobenius_inner(cand, gamma);
          if (inner > best_inner) {
            best_inner = inner;
            best_block = cand;
          }
        }
      }
    }
    if (best_inner / 2.0 > out.lower) {
      out.lower = best_inner / 2.0;
      best_dual = best_block;
      best_dual_omega = 2.0;
    }
  }

  for (;;) {
    const DenseSimplex::Status status = lp.optimize(1'000'000);
    if (status != DenseSimplex::Status::kOptimal) {
      throw NumericalError("pi_norm_exact: master LP did not reach optimality");
    }
    const Matrix dual = unflatten(lp.duals(), n);
    const auto candidates = best_sign_pairs(dual, per_round);
    const double omega = candidates.front().first;
    // dual / max(1, omega) is feasible for the full dual problem.
    const double lower = lp.objective() / std::max(1.0, omega);
    if (lower > out.lower) {
      out.lower = lower;
      best_dual = dual;
      best_dual_omega = std::max(1.0, omega);
    }
    if (omega <= 1.0 + options.tol) {
      out.converged = true;
      break;
    }
    if (options.stop_above && out.lower > *options.stop_above) {
      out.stopped_early = true;
      break;
    }
    if (options.stop_below && lp.objective() <= *options.stop_below) {
      out.stopped_early = true;
      break;
    }
    if (out.iterations >= max_cuts) break;
    int added = 0;
    for (const auto& [value, pair] : candidates) {
      if (value <= 1.0 + options.tol) break;
      if (!present.insert(pair).second) continue;
      lp.add_column(flatten(pair.outer()), 1.0);
      sign_columns.push_back(pair);
      ++added;
      ++out.iterations;
    }
    if (added == 0) {
      throw NumericalError("pi_norm_exact: separation returned only existing columns");
    }
  }
  out.pivots = lp.pivots();

  // Primal decomposition from the basic solution.
  const Vector x = lp.primal();
  std::map<SignPair, double> terms;
  for (int k = 0; k < entries; ++k) {
    const int i = k / n;
    const int j = k % n;
    if (x(2 * k) > 0.0) add_unit_matrix(n, i, j, x(2 * k), false, terms);
    if (x(2 * k + 1) > 0.0) add_unit_matrix(n, i, j, x(2 * k + 1), true, terms);
  }
  for (std::size_t c = 0; c < sign_columns.size(); ++c) {
    const double w = x(2 * entries + static_cast<int>(c));
    if (w > 0.0) terms[sign_columns[c]] += w;
  }
  out.decomposition.total = 0.0;
  for (auto& [pair, weight] : terms) {
    if (!(weight > 0.0)) continue;
    out.decomposition.terms.push_back({weight, pair});
    out.decomposition.total += weight;
  }
  out.upper = out.decomposition.total;
  out.value = out.decomposition.total;
  if (out.stopped_early && options.stop_above && out.lower > *options.stop_above) {
    out.value = out.lower;
  }

  out.dual_witness.entries = best_dual / best_dual_omega;
  out.dual_witness.classical_bound = ExactBound{classical_value_exact(out.dual_witness.entries).omega};
  return out;
}

}  // namespace qcorr
