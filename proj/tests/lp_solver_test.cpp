// Copyright 2026 The slpplan Authors
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

#include "slpplan/lp_solver.hpp"

#include <chrono>
#include <random>

#include <gtest/gtest.h>

#include "lp_oracle.hpp"

namespace slpplan {
namespace {

TEST(LpSolver, SimplexTriangle) {
  LinearProgram lp;
  const int x = lp.AddVariable("x", 0.0, kInf, -1.0);
  const int y = lp.AddVariable("y", 0.0, kInf, -1.0);
  lp.AddLessEqual(SparseRow().Add(x, 1.0).Add(y, 1.0), 1.0);
  const LpSolution sol = Solve(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.objective, -1.0, 1e-12);
  EXPECT_NEAR(sol.x[0] + sol.x[1], 1.0, 1e-12);
  // The solution is one of the two optimal vertices.
  EXPECT_TRUE(std::abs(sol.x[0] * sol.x[1]) < 1e-12);
  EXPECT_NEAR(*testing::VertexEnumerationOptimum(lp), -1.0, 1e-12);
}

TEST(LpSolver, ContradictoryRowsAreInfeasible) {
  LinearProgram lp;
  const int x = lp.AddVariable("x", -kInf, kInf, 1.0);
  lp.AddLessEqual(SparseRow().Add(x, 1.0), -1.0);
  lp.AddGreaterEqual(SparseRow().Add(x, 1.0), 0.0);
  EXPECT_EQ(Solve(lp).status, LpStatus::kInfeasible);
}

TEST(LpSolver, InfeasibleEqualitySystem) {
  LinearProgram lp;
  const int x = lp.AddVariable("x", 0.0, 1.0);
  const int y = lp.AddVariable("y", 0.0, 1.0);
  lp.AddEquality(SparseRow().Add(x, 1.0).Add(y, 1.0), 3.0);
  EXPECT_EQ(Solve(lp).status, LpStatus::kInfeasible);
}

TEST(LpSolver, UnboundedRay) {
  LinearProgram lp;
  lp.AddVariable("x", 0.0, kInf, -1.0);
  EXPECT_EQ(Solve(lp).status, LpStatus::kUnbounded);
}

TEST(LpSolver, UnboundedThroughRows) {
  LinearProgram lp;
  const int x = lp.AddVariable("x", -kInf, kInf, -1.0);
  const int y = lp.AddVariable("y", -kInf, kInf, 0.0);
  lp.AddLessEqual(SparseRow().Add(x, 1.0).Add(y, -1.0), 2.0);
  EXPECT_EQ(Solve(lp).status, LpStatus::kUnbounded);
}

TEST(LpSolver, FreeVariablesAndEqualities) {
  // min |x - 3| written as an epigraph with a free x.
  LinearProgram lp;
  const int x = lp.AddVariable("x", -kInf, kInf);
  const int t = lp.AddVariable("t", -kInf, kInf, 1.0);
  const int y = lp.AddVariable("y", -kInf, kInf);
  lp.AddEquality(SparseRow().Add(y, 1.0).Add(x, -1.0), -3.0);
  lp.AddLessEqual(SparseRow().Add(y, 1.0).Add(t, -1.0), 0.0);
  lp.AddLessEqual(SparseRow().Add(y, -1.0).Add(t, -1.0), 0.0);
  const LpSolution sol = Solve(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.objective, 0.0, 1e-12);
  EXPECT_NEAR(sol.x[static_cast<std::size_t>(x)], 3.0, 1e-12);
}

// Beale's instance cycles under the textbook Dantzig rule with smallest
// subscript tie-breaking.
LinearProgram Beale() {
  LinearProgram lp;
  const int x4 = lp.AddVariable("x4", 0.0, kInf, -0.75);
  const int x5 = lp.AddVariable("x5", 0.0, kInf, 20.0);
  const int x6 = lp.AddVariable("x6", 0.0, kInf, -0.5);
  const int x7 = lp.AddVariable("x7", 0.0, kInf, 6.0);
  lp.AddLessEqual(
      SparseRow().Add(x4, 0.25).Add(x5, -8.0).Add(x6, -1.0).Add(x7, 9.0), 0.0);
  lp.AddLessEqual(
      SparseRow().Add(x4, 0.5).Add(x5, -12.0).Add(x6, -0.5).Add(x7, 3.0), 0.0);
  lp.AddLessEqual(SparseRow().Add(x6, 1.0), 1.0);
  return lp;
}

TEST(LpSolver, BealeCyclingInstanceTerminates) {
  const LpSolution sol = Solve(Beale());
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.objective, -1.25, 1e-12);
}

TEST(LpSolver, BealeUnderImmediateBland) {
  SimplexOptions opt;
  opt.bland_after = 0;
  const LpSolution sol = Solve(Beale(), opt);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.objective, -1.25, 1e-12);
}

TEST(LpSolver, RandomLpsMatchVertexEnumeration) {
  std::mt19937_64 rng(20260419);
  const auto t0 = std::chrono::steady_clock::now();
  for (int trial = 0; trial < 500; ++trial) {
    const LinearProgram lp = testing::RandomBoundedLp(rng);
    const auto oracle = testing::VertexEnumerationOptimum(lp);
    ASSERT_TRUE(oracle.has_value()) << trial;
    const LpSolution sol = Solve(lp);
    ASSERT_EQ(sol.status, LpStatus::kOptimal) << trial << ": " << sol.message;
    EXPECT_NEAR(sol.objective, *oracle, 1e-8) << trial;
    EXPECT_LE(sol.max_violation, 1e-7) << trial;
  }
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
  EXPECT_LT(secs, 10.0);
}

TEST(LpSolver, RandomLpsWithEqualityRows) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    LinearProgram lp = testing::RandomBoundedLp(rng);
    if (lp.num_vars() < 2) continue;
    std::vector<double> mid;
    for (std::size_t j = 0; j < lp.num_vars(); ++j) {
      mid.push_back(0.5 * (lp.lower()[j] + lp.upper()[j]));
    }
    SparseRow row;
    for (std::size_t j = 0; j < lp.num_vars(); ++j) {
      row.Add(static_cast<int>(j), coef(rng));
    }
    // Feasible whenever the midpoint satisfies the inequality rows.
    if (lp.MaxViolation(mid) > 0) continue;
    const double rhs = row.Dot(mid);
    lp.AddEquality(row, rhs);
    const auto oracle = testing::VertexEnumerationOptimum(lp);
    ASSERT_TRUE(oracle.has_value());
    const LpSolution sol = Solve(lp);
    ASSERT_EQ(sol.status, LpStatus::kOptimal) << trial;
    EXPECT_NEAR(sol.objective, *oracle, 1e-8) << trial;
  }
}

TEST(LpSolver, WarmStartWithOwnBasisNeedsNoPivots) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const LinearProgram lp = testing::RandomBoundedLp(rng);
    const LpSolution cold = Solve(lp);
    ASSERT_EQ(cold.status, LpStatus::kOptimal);
    const LpSolution warm = WarmStartSolve(lp, cold.basis);
    ASSERT_EQ(warm.status, LpStatus::kOptimal);
    EXPECT_TRUE(warm.warm_started);
    EXPECT_EQ(warm.phase2_pivots, 0) << trial;
    EXPECT_EQ(warm.phase1_pivots, 0) << trial;
    EXPECT_NEAR(warm.objective, cold.objective, 1e-9);
  }
}

TEST(LpSolver, CorruptedHintFallsBackToColdStart) {
  const LinearProgram lp = Beale();
  const LpSolution cold = Solve(lp);
  Basis bad = cold.basis;
  bad.basic.push_back(12345);
  const LpSolution warm = WarmStartSolve(lp, bad);
  ASSERT_EQ(warm.status, LpStatus::kOptimal);
  EXPECT_FALSE(warm.warm_started);
  EXPECT_EQ(warm.objective, cold.objective);
  EXPECT_EQ(warm.x, cold.x);
}

TEST(LpSolver, RemapFollowsRowKeys) {
  LinearProgram a;
  const int x = a.AddVariable("x", 0.0, 10.0, -1.0);
  const int y = a.AddVariable("y", 0.0, 10.0, -1.0);
  a.AddLessEqual(SparseRow().Add(x, 1.0).Add(y, 2.0), 8.0, 7);
  a.AddLessEqual(SparseRow().Add(x, 3.0).Add(y, 1.0), 9.0, 3);
  const LpSolution sa = Solve(a);
  ASSERT_EQ(sa.status, LpStatus::kOptimal);

  // Same program with the rows swapped and an extra unkeyed row.
  LinearProgram b;
  b.AddVariable("x", 0.0, 10.0, -1.0);
  b.AddVariable("y", 0.0, 10.0, -1.0);
  b.AddLessEqual(SparseRow().Add(x, 5.0).Add(y, 5.0), 100.0);
  b.AddLessEqual(SparseRow().Add(x, 3.0).Add(y, 1.0), 9.0, 3);
  b.AddLessEqual(SparseRow().Add(x, 1.0).Add(y, 2.0), 8.0, 7);
  const Basis hint = RemapBasis(sa.basis, a, b);
  const LpSolution sb = WarmStartSolve(b, hint);
  ASSERT_EQ(sb.status, LpStatus::kOptimal);
  EXPECT_TRUE(sb.warm_started);
  EXPECT_NEAR(sb.objective, sa.objective, 1e-12);
  EXPECT_EQ(sb.pivots(), 0);
}

TEST(LpSolver, EmptyRowsArePresolved) {
  LinearProgram lp;
  lp.AddVariable("x", 0.0, 1.0, -1.0);
  lp.AddLessEqual(SparseRow(), -1.0);
  EXPECT_EQ(Solve(lp).status, LpStatus::kInfeasible);
  LinearProgram ok;
  ok.AddVariable("x", 0.0, 1.0, -1.0);
  ok.AddLessEqual(SparseRow(), 1.0);
  const LpSolution sol = Solve(ok);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_DOUBLE_EQ(sol.objective, -1.0);
}

}  // namespace
}  // namespace slpplan
