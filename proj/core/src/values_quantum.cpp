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
#include <limits>
#include <string>

#include "qcorr/errors.hpp"
#include "qcorr/values.hpp"

namespace qcorr {
namespace {

Vector random_unit(int dim, RandomStream& stream) {
  Vector x(dim);
  double norm = 0.0;
  while (!(norm > 0.0)) {
    for (int k = 0; k < dim; ++k) x(k) = stream.gaussian();
    norm = x.norm();
  }
  return x / norm;
}

// Normalizes each row of `target` in place; zero rows are replaced by
// random unit vectors.
void normalize_rows(Matrix& target, RandomStream& stream, const std::string& where) {
  for (int i = 0; i < target.rows(); ++i) {
    const double norm = target.row(i).norm();
    if (norm > 0.0) {
      target.row(i) /= norm;
    } else {
      log_warning("quantum_value_lower: zero vector at " + where + " row " + std::to_string(i) +
                  ", reinitializing");
      target.row(i) = random_unit(static_cast<int>(target.cols()), stream).transpose();
    }
  }
}

double objective(const Matrix& a, const Matrix& u, const Matrix& v) {
  // sum_ij a_ij <u_i, v_j> = sum_i <u_i, (A V)_i>
  return (a * v).cwiseProduct(u).sum();
}

}  // namespace

QuantumLowerBound quantum_value_lower(const Matrix& a, const AscentOptions& options) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n || n < 1) throw DimensionError("quantum_value_lower: need a square matrix");
  const int rank = options.rank > 0 ? options.rank : 2 * n;
  if (options.restarts < 1) throw ArgumentError("quantum_value_lower: restarts must be >= 1");

  QuantumLowerBound best;
  best.value = -std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < options.restarts; ++restart) {
    RandomStream stream(options.seed.child(static_cast<std::uint64_t>(restart)));
    Matrix u(n, rank);
    for (int i = 0; i < n; ++i) u.row(i) = random_unit(rank, stream).transpose();
    Matrix v(n, rank);

    std::vector<double> trace;
    double previous = -std::numeric_limits<double>::infinity();
    int iter = 0;
    for (; iter < options.max_iters; ++iter) {
      v = a.transpose() * u;
      normalize_rows(v, stream, "v");
      trace.push_back(objective(a, u, v));
      u = a * v;
      normalize_rows(u, stream, "u");
      const double current = objective(a, u, v);
      trace.push_back(current);
      if (current - previous <= options.tol * std::max(1.0, std::abs(current))) break;
      previous = current;
    }
    const double value = trace.back();
    if (value > best.value) {
      best.value = value;
      best.u = u;
      best.v = v;
      best.trace = std::move(trace);
      best.iterations = iter;
    }
  }
  return best;
}

Matrix bell_block_matrix(const Matrix& a) {
  const int n = static_cast<int>(a.rows());
  Matrix m = Matrix::Zero(2 * n, 2 * n);
  m.topRightCorner(n, n) = 0.5 * a;
  m.bottomLeftCorner(n, n) = 0.5 * a.transpose();
  return m;
}

QuantumUpperBound quantum_value_upper(const Matrix& a, const DualDescentOptions& options) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n || n < 1) throw DimensionError("quantum_value_upper: need a square matrix");
  const int dim = 2 * n;
  const Eigen::MatrixXd block = bell_block_matrix(a);
  const double slack = 1e-12 * std::max(1.0, block.cwiseAbs().maxCoeff() * dim);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  QuantumUpperBound out;
  out.value = std::numeric_limits<double>::infinity();

  solver.compute(block, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("quantum_value_upper: eigensolver failed on the initial point");
  }
  // lambda_max(M) = sigma_max(A) / 2.
  Vector d = Vector::Constant(dim, solver.eigenvalues()(dim - 1));
  const double step0 = 0.5 * std::max(std::abs(d(0)), 1e-6);

  int since_improvement = 0;
  double checkpoint = out.value;
  int iter = 0;
  for (; iter < options.max_iters; ++iter) {
    solver.compute(block - Eigen::MatrixXd(d.asDiagonal()), Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
      out.eigen_converged = false;
      log_warning("quantum_value_upper: eigensolver failed at iteration " +
                  std::to_string(iter) + "; returning the last certified bound");
      break;
    }
    const double top = solver.eigenvalues()(dim - 1);
    const Vector lambda = d.array() + (top + slack);
    const double value = lambda.sum();
    if (value < out.value) {
      out.value = value;
      out.lambda = lambda;
    }
    // Subgradient of sum(d) + dim * lambda_max(M - diag d).
    const Vector top_vec = solver.eigenvectors().col(dim - 1);
    Vector grad = Vector::Ones(dim) - dim * top_vec.cwiseAbs2();
    const double gnorm = grad.norm();
    if (gnorm < 1e-14) break;
    d -= (step0 / std::sqrt(iter + 1.0)) * grad / gnorm;

    if (++since_improvement == 100) {
      if (checkpoint - out.value <= options.tol * std::max(1.0, std::abs(out.value))) break;
      checkpoint = out.value;
      since_improvement = 0;
    }
  }
  out.iterations = iter;

  const Eigen::MatrixXd gap = Eigen::MatrixXd(out.lambda.asDiagonal()) - block;
  solver.compute(gap, Eigen::EigenvaluesOnly);
  out.min_eigenvalue = solver.eigenvalues()(0);
  if (out.min_eigenvalue < -1e-8) {
    throw NumericalError("quantum_value_upper: certified point lost feasibility (" +
                         std::to_string(out.min_eigenvalue) + ")");
  }
  return out;
}

QuantumValueBounds quantum_value_bounds(const Matrix& a, const AscentOptions& ascent,
                                        const DualDescentOptions& descent) {
  QuantumLowerBound lower = quantum_value_lower(a, ascent);
  QuantumUpperBound upper = quantum_value_upper(a, descent);
  QuantumValueBounds out;
  out.lower = lower.value;
  out.upper = upper.value;
  out.u = std::move(lower.u);
  out.v = std::move(lower.v);
  out.lambda = std::move(upper.lambda);
  return out;
}

}  // namespace qcorr
