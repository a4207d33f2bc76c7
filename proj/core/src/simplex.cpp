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

#include "qcorr/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qcorr/errors.hpp"

namespace qcorr {

DenseSimplex::DenseSimplex(Vector rhs) : rhs_(std::move(rhs)) {
  if (rhs_.size() == 0) throw ArgumentError("DenseSimplex: no rows");
  work_rhs_ = rhs_;
}

int DenseSimplex::add_column(Vector column, double cost) {
  if (column.size() != rhs_.size()) throw DimensionError("DenseSimplex: column length");
  if (num_columns_ == columns_.cols()) {
    const Eigen::Index capacity = std::max<Eigen::Index>(16, 2 * columns_.cols());
    columns_.conservativeResize(rhs_.size(), capacity);
    costs_.conservativeResize(capacity);
  }
  columns_.col(num_columns_) = column;
  costs_(num_columns_) = cost;
  is_basic_.push_back(0);
  return num_columns_++;
}

void DenseSimplex::set_basis(const std::vector<int>& basis) {
  if (static_cast<int>(basis.size()) != rows()) throw DimensionError("DenseSimplex: basis size");
  for (int j : basis) {
    if (j < 0 || j >= num_columns()) throw ArgumentError("DenseSimplex: basis index");
  }
  std::fill(is_basic_.begin(), is_basic_.end(), 0);
  basis_ = basis;
  for (int j : basis_) is_basic_[j] = 1;
  work_rhs_ = rhs_;
  dual_phase_ = true;
  refactor();
  dual_phase_ = false;
  for (int r = 0; r < rows(); ++r) {
    if (basic_values_(r) < -1e-9) {
      throw ArgumentError("DenseSimplex: basis infeasible at row " + std::to_string(r));
    }
    if (basic_values_(r) < 0.0) basic_values_(r) = 0.0;
  }
}

void DenseSimplex::refactor() {
  const int m = rows();
  Eigen::MatrixXd b(m, m);
  for (int r = 0; r < m; ++r) b.col(r) = columns_.col(basis_[r]);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(b);
  if (!lu.isInvertible()) throw ArgumentError("DenseSimplex: singular basis");
  basis_inverse_ = lu.inverse();
  basic_values_ = basis_inverse_ * work_rhs_;
  if (!dual_phase_) {
    for (int r = 0; r < m; ++r) {
      if (basic_values_(r) < 0.0) basic_values_(r) = 0.0;
    }
  }
  since_refactor_ = 0;
}

Vector DenseSimplex::duals() const {
  const int m = rows();
  Vector cb(m);
  for (int r = 0; r < m; ++r) cb(r) = costs_[basis_[r]];
  return basis_inverse_.transpose() * cb;
}

double DenseSimplex::objective() const {
  double total = 0.0;
  for (int r = 0; r < rows(); ++r) total += costs_[basis_[r]] * basic_values_(r);
  return total;
}

Vector DenseSimplex::primal() const {
  Vector x = Vector::Zero(num_columns());
  for (int r = 0; r < rows(); ++r) x(basis_[r]) = basic_values_(r);
  return x;
}

void DenseSimplex::pivot(int leaving_row, int entering, const Vector& direction) {
  const double step = basic_values_(leaving_row) / direction(leaving_row);
  basic_values_ -= step * direction;
  basic_values_(leaving_row) = step;
  if (!dual_phase_) {
    for (int r = 0; r < rows(); ++r) {
      if (basic_values_(r) < 0.0) basic_values_(r) = 0.0;
    }
  }

  const Eigen::RowVectorXd pivot_row = basis_inverse_.row(leaving_row) / direction(leaving_row);
  basis_inverse_.noalias() -= direction * pivot_row;
  basis_inverse_.row(leaving_row) = pivot_row;

  is_basic_[basis_[leaving_row]] = 0;
  basis_[leaving_row] = entering;
  is_basic_[entering] = 1;
  ++pivots_;
  if (++since_refactor_ >= refactor_interval) refactor();
}

DenseSimplex::Status DenseSimplex::primal_loop(int& budget) {
  int degenerate_streak = 0;
  for (; budget > 0; --budget) {
    const Vector y = duals();
    const bool bland = degenerate_streak >= kDegenerateStreak;
    if (bland) used_bland_ = true;

    const Vector reduced_costs =
        costs_.head(num_columns_) - columns_.leftCols(num_columns_).transpose() * y;
    int entering = -1;
    double best = -kReducedCostTol;
    for (int j = 0; j < num_columns(); ++j) {
      if (is_basic_[j]) continue;
      const double reduced = reduced_costs(j);
      if (reduced < best) {
        entering = j;
        if (bland) break;
        best = reduced;
      }
    }
    if (entering < 0) return Status::kOptimal;

    const Vector direction = basis_inverse_ * columns_.col(entering);
    int leaving = -1;
    double ratio = std::numeric_limits<double>::infinity();
    for (int r = 0; r < rows(); ++r) {
      if (direction(r) <= kPivotTol) continue;
      const double candidate = basic_values_(r) / direction(r);
      if (leaving < 0 || candidate < ratio - 1e-12) {
        leaving = r;
        ratio = candidate;
      } else if (candidate <= ratio + 1e-12) {
        // Tie: Bland takes the smallest basic index, otherwise the largest
        // pivot element for stability.
        const bool take = bland ? basis_[r] < basis_[leaving] : direction(r) > direction(leaving);
        if (take) {
          leaving = r;
          ratio = std::min(ratio, candidate);
        }
      }
    }
    if (leaving < 0) return Status::kUnbounded;

    degenerate_streak = ratio <= 1e-12 ? degenerate_streak + 1 : 0;
    pivot(leaving, entering, direction);
  }
  return Status::kPivotLimit;
}

bool DenseSimplex::dual_loop(int& budget) {
  dual_phase_ = true;
  bool ok = true;
  for (; budget > 0; --budget) {
    int leaving = -1;
    double worst = -kFeasibilityTol;
    for (int r = 0; r < rows(); ++r) {
      if (basic_values_(r) < worst) {
        worst = basic_values_(r);
        leaving = r;
      }
    }
    if (leaving < 0) break;

    const Vector y = duals();
    const Eigen::RowVectorXd row =
        basis_inverse_.row(leaving) * columns_.leftCols(num_columns_);
    int entering = -1;
    double ratio = std::numeric_limits<double>::infinity();
    for (int j = 0; j < num_columns(); ++j) {
      if (is_basic_[j] || row(j) >= -kPivotTol) continue;
      const double reduced = std::max(0.0, costs_(j) - columns_.col(j).dot(y));
      const double candidate = reduced / -row(j);
      if (entering < 0 || candidate < ratio - 1e-12 ||
          (candidate <= ratio + 1e-12 && -row(j) > -row(entering))) {
        entering = j;
        ratio = std::min(ratio, candidate);
      }
    }
    if (entering < 0) {
      ok = false;
      break;
    }
    pivot(leaving, entering, basis_inverse_ * columns_.col(entering));
  }
  dual_phase_ = false;
  for (int r = 0; r < rows(); ++r) {
    if (basic_values_(r) < 0.0) basic_values_(r) = 0.0;
  }
  return ok;
}

DenseSimplex::Status DenseSimplex::optimize(int max_pivots) {
  if (static_cast<int>(basis_.size()) != rows()) throw ArgumentError("DenseSimplex: no basis");
  const int m = rows();
  int budget = max_pivots;

  // Shift every basic value up by a small, row-dependent amount.
  Vector shift(m);
  for (int r = 0; r < m; ++r) {
    shift(r) = kPerturbation * (1.0 + static_cast<double>((r * 7919) % 101) / 101.0);
  }
  work_rhs_ = rhs_;
  for (int r = 0; r < m; ++r) work_rhs_ += shift(r) * columns_.col(basis_[r]);
  basic_values_ += shift;

  Status status = primal_loop(budget);

  work_rhs_ = rhs_;
  dual_phase_ = true;
  refactor();
  dual_phase_ = false;
  if (status != Status::kOptimal) {
    for (int r = 0; r < m; ++r) basic_values_(r) = std::max(0.0, basic_values_(r));
    return status;
  }
  for (int round = 0; round < 4; ++round) {
    if (!dual_loop(budget)) return Status::kInfeasible;
    if (budget <= 0) return Status::kPivotLimit;
    status = primal_loop(budget);
    if (status != Status::kOptimal) return status;
    if ((basic_values_.array() >= 0.0).all()) {
      bool feasible = true;
      dual_phase_ = true;
      refactor();
      dual_phase_ = false;
      for (int r = 0; r < m; ++r) {
        if (basic_values_(r) < -kFeasibilityTol) feasible = false;
        basic_values_(r) = std::max(0.0, basic_values_(r));
      }
      if (feasible) return Status::kOptimal;
    }
  }
  return Status::kPivotLimit;
}

}  // namespace qcorr
