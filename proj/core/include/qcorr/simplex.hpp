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

#ifndef QCORR_SIMPLEX_HPP_
#define QCORR_SIMPLEX_HPP_

#include <vector>

#include "qcorr/linalg.hpp"

namespace qcorr {

// Dense revised primal simplex for
//
//   minimize c^T x  subject to  A x = b,  x >= 0
//
// over a column set that may grow between solves (column generation). The
// caller supplies a feasible starting basis; adding columns keeps the current
// basis feasible, so every re-solve is warm. The basis inverse is kept
// explicitly, updated by elementary row operations and refactored from
// scratch every `refactor_interval` pivots.
//
// Pricing is Dantzig's most-negative reduced cost. Each solve runs on a
// slightly perturbed right-hand side; the perturbation is then removed and
// any small infeasibility is repaired with dual simplex pivots. After a run of
// degenerate pivots pricing falls back to Bland's smallest-index rule.
class DenseSimplex {
 public:
  enum class Status { kOptimal, kPivotLimit, kUnbounded, kInfeasible };

  explicit DenseSimplex(Vector rhs);

  int rows() const { return static_cast<int>(rhs_.size()); }
  int num_columns() const { return num_columns_; }

  int add_column(Vector column, double cost);

  // Throws ArgumentError if the basis is singular or B^{-1} b has an entry
  // below -1e-9.
  void set_basis(const std::vector<int>& basis);

  Status optimize(int max_pivots);

  double objective() const;
  // y solving B^T y = c_B; at optimality y^T a_j <= c_j for every column.
  Vector duals() const;
  // Value of every column (zero for nonbasic ones).
  Vector primal() const;
  const std::vector<int>& basis() const { return basis_; }
  int pivots() const { return pivots_; }
  bool used_bland() const { return used_bland_; }

  static constexpr double kReducedCostTol = 1e-10;
  static constexpr double kPivotTol = 1e-9;
  static constexpr int kDegenerateStreak = 50;
  static constexpr double kPerturbation = 1e-7;
  static constexpr double kFeasibilityTol = 1e-10;
  int refactor_interval = 100;

 private:
  void refactor();
  void pivot(int leaving_row, int entering, const Vector& direction);
  Status primal_loop(int& budget);
  // false if some row stays infeasible with no eligible entering column.
  bool dual_loop(int& budget);

  Vector rhs_;
  Vector work_rhs_;  // rhs_ plus the current perturbation
  bool dual_phase_ = false;
  // Columns stored side by side; capacity grows geometrically.
  Eigen::MatrixXd columns_;
  Vector costs_;
  int num_columns_ = 0;
  std::vector<int> basis_;
  std::vector<char> is_basic_;
  Eigen::MatrixXd basis_inverse_;
  Vector basic_values_;
  int pivots_ = 0;
  int since_refactor_ = 0;
  bool used_bland_ = false;
};

}  // namespace qcorr

#endif  // QCORR_SIMPLEX_HPP_
