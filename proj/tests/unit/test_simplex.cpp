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

#include <gtest/gtest.h>

#include "qcorr/errors.hpp"
#include "qcorr/simplex.hpp"

namespace qcorr {
namespace {

// min x0 + x1 + x2  s.t.  x0 + x2 = 1,  x1 + x2 = 1,  x >= 0.  Optimum 1 at x2 = 1.
TEST(DenseSimplex, SmallProblem) {
  Vector rhs(2);
  rhs << 1, 1;
  DenseSimplex lp(rhs);
  Vector c0(2), c1(2), c2(2);
  c0 << 1, 0;
  c1 << 0, 1;
  c2 << 1, 1;
  lp.add_column(c0, 1.0);
  lp.add_column(c1, 1.0);
  lp.add_column(c2, 1.0);
  lp.set_basis({0, 1});
  EXPECT_DOUBLE_EQ(lp.objective(), 2.0);
  ASSERT_EQ(lp.optimize(100), DenseSimplex::Status::kOptimal);
  EXPECT_NEAR(lp.objective(), 1.0, 1e-12);
  const Vector x = lp.primal();
  EXPECT_NEAR(x(2), 1.0, 1e-12);
  // Dual feasibility: reduced costs nonnegative.
  const Vector y = lp.duals();
  EXPECT_GE(1.0 - y.dot(c0), -1e-12);
  EXPECT_GE(1.0 - y.dot(c1), -1e-12);
  EXPECT_NEAR(1.0 - y.dot(c2), 0.0, 1e-12);
}

TEST(DenseSimplex, ColumnsAddedAfterOptimizing) {
  Vector rhs(2);
  rhs << 2, 1;
  DenseSimplex lp(rhs);
  lp.add_column(Vector::Unit(2, 0), 1.0);
  lp.add_column(Vector::Unit(2, 1), 1.0);
  lp.set_basis({0, 1});
  ASSERT_EQ(lp.optimize(100), DenseSimplex::Status::kOptimal);
  EXPECT_NEAR(lp.objective(), 3.0, 1e-12);
  Vector c(2);
  c << 2, 1;
  lp.add_column(c, 1.0);
  ASSERT_EQ(lp.optimize(100), DenseSimplex::Status::kOptimal);
  EXPECT_NEAR(lp.objective(), 1.0, 1e-12);
}

TEST(DenseSimplex, InfeasibleBasisRejected) {
  Vector rhs(1);
  rhs << 1;
  DenseSimplex lp(rhs);
  lp.add_column(-Vector::Ones(1), 1.0);
  EXPECT_THROW(lp.set_basis({0}), ArgumentError);
}

TEST(DenseSimplex, SingularBasisRejected) {
  Vector rhs(2);
  rhs << 1, 1;
  DenseSimplex lp(rhs);
  lp.add_column(Vector::Ones(2), 1.0);
  lp.add_column(Vector::Ones(2), 1.0);
  EXPECT_THROW(lp.set_basis({0, 1}), ArgumentError);
}

TEST(DenseSimplex, DetectsUnbounded) {
  Vector rhs(1);
  rhs << 1;
  DenseSimplex lp(rhs);
  lp.add_column(Vector::Ones(1), 1.0);
  Vector zero = Vector::Zero(1);
  lp.add_column(zero, -1.0);
  lp.set_basis({0});
  EXPECT_EQ(lp.optimize(100), DenseSimplex::Status::kUnbounded);
}

}  // namespace
}  // namespace qcorr
