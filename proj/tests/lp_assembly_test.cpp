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

#include "slpplan/lp_assembly.hpp"

#include <cmath>
#include <functional>
#include <vector>

#include <gtest/gtest.h>

#include "slpplan/lp_solver.hpp"

namespace slpplan {
namespace {

struct Fixture {
  RoadCenterline cl = RoadCenterline::Build(std::vector<Vec2>{{0, 0}, {60, 0}}, 1.0);
  VehicleParams p;
  AssemblySettings set;
};

std::vector<LinearizedStage> StagesAboutZero(const Grid& g, const Fixture& f) {
  const std::vector<SpatialState> z(g.N() + 1);
  const std::vector<double> u(g.N(), 0.0);
  return LinearizeDiscretize(g, z, u, f.cl, f.p);
}

// Golden-section minimum of a convex function on [lo, hi].
double GoldenMin(const std::function<double(double)>& f, double lo, double hi) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 120 && b - a > 1e-13; ++it) {
    if (fc < fd) {
      b = d; d = c; fd = fc; c = b - r * (b - a); fc = f(c);
    } else {
      a = c; c = d; fc = fd; d = a + r * (b - a); fd = f(d);
    }
  }
  return std::min({f(a), f(b), f(0.5 * (a + b))});
}

TEST(Assembly, LayoutAndRowCounts) {
  Fixture f;
  const Grid g = BuildGrid(0.0, 20.0, 10, {});
  const Corridor c = CorridorBounds({}, {}, RoadWidth::Constant(3.5), 1.8);
  const auto alp = Assemble(StagesAboutZero(g, f), g, c, {}, {}, {}, f.set);
  const VariableMap& v = alp.vars;
  EXPECT_EQ(alp.lp.num_vars(), 10u + 2u * 11u + 5u);
  EXPECT_EQ(alp.lp.num_eq(), 20u);
  // abs, diff, rate (2 each per input), 4 terminal, 2 corridor per station.
  EXPECT_EQ(alp.lp.num_in(), 6u * 10u + 4u + 2u * 10u);
  EXPECT_EQ(v.u(3), 3);
  EXPECT_EQ(v.e_psi(0), 10);
  EXPECT_EQ(v.e_y(0), 11);
  EXPECT_EQ(alp.lp.names()[static_cast<std::size_t>(v.e_y(4))], "ey[4]");
  EXPECT_EQ(alp.lp.lower()[static_cast<std::size_t>(v.e_psi(0))], 0.0);
  EXPECT_EQ(alp.lp.upper()[static_cast<std::size_t>(v.e_psi(0))], 0.0);
  EXPECT_EQ(alp.lp.cost()[static_cast<std::size_t>(v.sigma)], f.set.w_sigma);
}

TEST(Assembly, FirstDifferenceOperator) {
  const Eigen::MatrixXd D = FirstDifference(4);
  const Eigen::VectorXd off = FirstDifferenceOffset(4, 0.3);
  const Eigen::Vector4d u(1.0, 2.0, 4.0, 7.0);
  const Eigen::VectorXd d = D * u + off;
  EXPECT_DOUBLE_EQ(d(0), 0.7);
  EXPECT_DOUBLE_EQ(d(1), 1.0);
  EXPECT_DOUBLE_EQ(d(2), 2.0);
  EXPECT_DOUBLE_EQ(d(3), 3.0);
}

TEST(Assembly, EquilibriumGivesZeroInputs) {
  Fixture f;
  const Grid g = BuildGrid(0.0, 40.0, 50, {});
  const Corridor c = CorridorBounds({}, {}, RoadWidth::Constant(3.5), 1.8);
  const auto alp = Assemble(StagesAboutZero(g, f), g, c, {}, {}, {}, f.set);
  const LpSolution sol = Solve(alp.lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_LE(std::abs(sol.objective), 1e-12);
  const LpIterate it = ExtractIterate(alp.vars, sol.x, sol.objective);
  for (double u : it.inputs) EXPECT_LE(std::abs(u), 1e-12);
  EXPECT_LE(it.MaxSlack(), 1e-12);
}

// N = 2 on a straight road: the LP reduces to a convex piecewise-linear
// function of (u_0, u_1), minimized here by nested golden-section search.
TEST(Assembly, TwoStageProblemMatchesCondensedOracle) {
  Fixture f;
  f.set.delta_step_max = 0.3;
  f.set.u_prev = 0.05;
  const Grid g = BuildGrid(0.0, 4.0, 2, {});
  const std::vector<ObstacleEnvelope> envs{{0.5, 3.5, -3.5, -0.2, 0}};
  const std::vector<PassSide> sides{PassSide::kLeft};
  const Corridor c = CorridorBounds(envs, sides, RoadWidth::Constant(3.5), 1.8);
  const SpatialState start{0.02, -0.1};
  const SpatialState end{0.0, 0.4};
  const auto stages = StagesAboutZero(g, f);
  const auto alp = Assemble(stages, g, c, {}, start, end, f.set);
  const LpSolution sol = Solve(alp.lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);

  auto objective = [&](double u0, double u1) {
    Eigen::Vector2d z1 = stages[0].A * start.vec() + stages[0].B * u0 + stages[0].g;
    Eigen::Vector2d z2 = stages[1].A * z1 + stages[1].B * u1 + stages[1].g;
    double sigma = 0.0;
    for (std::size_t j : {1u, 2u}) {
      const double ey = j == 1 ? z1(1) : z2(1);
      const double s = g.stations[j];
      sigma = std::max({sigma, ey - c.UpperAt(s), c.LowerAt(s) - ey});
    }
    return std::max(std::abs(u0), std::abs(u1)) +
           f.set.lambda * std::max(std::abs(u0 - f.set.u_prev), std::abs(u1 - u0)) +
           f.set.w_sigma * (sigma + std::abs(z2(0) - end.e_psi) +
                            std::abs(z2(1) - end.e_y));
  };
  const double dm = f.set.delta_max;
  const double step = f.set.delta_step_max;
  auto inner = [&](double u0) {
    const double lo = std::max(-dm, u0 - step);
    const double hi = std::min(dm, u0 + step);
    return GoldenMin([&](double u1) { return objective(u0, u1); }, lo, hi);
  };
  const double oracle = GoldenMin(
      inner, std::max(-dm, f.set.u_prev - step), std::min(dm, f.set.u_prev + step));
  EXPECT_NEAR(sol.objective, oracle, 1e-6 * std::max(1.0, std::abs(oracle)));
}

TEST(Assembly, UnreachableCorridorIsAbsorbedBySlack) {
  Fixture f;
  const Grid g = BuildGrid(0.0, 10.0, 10, {});
  const Corridor c = CorridorBounds({}, {}, RoadWidth::Constant(1.0), 1.8);
  // Starting 2 m outside a 1 m half-width corridor.
  const auto alp =
      Assemble(StagesAboutZero(g, f), g, c, {}, {0.0, 3.0}, {0.0, 0.0}, f.set);
  const LpSolution sol = Solve(alp.lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  const LpIterate it = ExtractIterate(alp.vars, sol.x, sol.objective);
  EXPECT_GT(it.sigma, 0.1);
  EXPECT_LE(sol.max_violation, 1e-7);
  // Slack equals the worst corridor excess it covers.
  double worst = 0.0;
  for (std::size_t j = 1; j <= g.N(); ++j) {
    worst = std::max(worst, std::abs(it.states[j].e_y) - 1.0);
  }
  EXPECT_NEAR(it.sigma, worst, 1e-7);
}

TEST(Assembly, DynamicsRowsHoldAtTheSolution) {
  Fixture f;
  const Grid g = BuildGrid(0.0, 30.0, 30, {});
  const Corridor c = CorridorBounds({}, {}, RoadWidth::Constant(3.5), 1.8);
  const auto stages = StagesAboutZero(g, f);
  const auto alp = Assemble(stages, g, c, {}, {}, {0.0, 1.5}, f.set);
  const LpSolution sol = Solve(alp.lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  const LpIterate it = ExtractIterate(alp.vars, sol.x, sol.objective);
  for (std::size_t j = 0; j < g.N(); ++j) {
    const Eigen::Vector2d next = stages[j].A * it.states[j].vec() +
                                 stages[j].B * it.inputs[j] + stages[j].g;
    EXPECT_NEAR((next - it.states[j + 1].vec()).norm(), 0.0, 1e-9);
  }
  EXPECT_NEAR(it.states.back().e_y, 1.5, 1e-7);
  double max_u = 0.0, max_du = 0.0;
  for (std::size_t j = 0; j < it.inputs.size(); ++j) {
    max_u = std::max(max_u, std::abs(it.inputs[j]));
    const double prev = j == 0 ? f.set.u_prev : it.inputs[j - 1];
    max_du = std::max(max_du, std::abs(it.inputs[j] - prev));
    EXPECT_LE(std::abs(it.inputs[j] - prev), f.set.delta_step_max + 1e-9);
  }
  EXPECT_NEAR(it.t_u, max_u, 1e-9);
  EXPECT_NEAR(it.t_du, max_du, 1e-9);
}

TEST(Assembly, ParallelOvertakeSetsCoverObstacleExtent) {
  Fixture f;
  const std::vector<ObstacleEnvelope> envs{{10.0, 14.0, -3.5, -1.0, 0.05}};
  const Grid g = BuildGrid(0.0, 30.0, 30, envs);
  const Corridor c = CorridorBounds(envs, std::vector<PassSide>{PassSide::kLeft},
                                    RoadWidth::Constant(3.5), 1.8);
  auto alp = Assemble(StagesAboutZero(g, f), g, c, {}, {}, {}, f.set);
  const std::size_t before = alp.lp.num_in();
  const auto sets = AddParallelOvertake(alp, envs, g);
  ASSERT_EQ(sets.size(), 1u);
  const std::vector<std::size_t> expected{10, 11, 12, 13, 14};
  EXPECT_EQ(sets[0], expected);
  EXPECT_EQ(alp.lp.num_in(), before + 2 * expected.size());
  const LpSolution sol = Solve(alp.lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  const LpIterate it = ExtractIterate(alp.vars, sol.x, sol.objective);
  for (std::size_t j : expected) {
    EXPECT_NEAR(it.states[j].e_psi, 0.05, it.sigma_epsi_N + 1e-9);
  }
}

TEST(Assembly, FootprintBlocksAddKeyedRows) {
  Fixture f;
  const std::vector<ObstacleEnvelope> envs{{10.0, 14.0, -3.5, -1.0, 0}};
  const Grid g = BuildGrid(0.0, 30.0, 30, envs);
  const Corridor c = CorridorBounds(envs, std::vector<PassSide>{PassSide::kLeft},
                                    RoadWidth::Constant(3.5), 1.8);
  std::vector<FootprintConstraintBlock> blocks;
  for (std::size_t j = 1; j < g.N(); ++j) {
    blocks.push_back(LinearizedBlock(j, {}, g, c, f.p));
  }
  const auto alp = Assemble(StagesAboutZero(g, f), g, c, blocks, {}, {}, f.set);
  std::size_t rows = 0;
  for (const auto& b : blocks) rows += b.lower_stations.size() + b.upper_stations.size();
  EXPECT_EQ(alp.lp.num_in(), 6u * 30u + 4u + 2u * 30u + rows);
  const auto& keys = alp.lp.in_keys();
  std::vector<std::int64_t> sorted(keys.begin(), keys.end());
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(std::adjacent_find(sorted.begin(), sorted.end()), sorted.end());

  const LpSolution sol = Solve(alp.lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  const LpIterate it = ExtractIterate(alp.vars, sol.x, sol.objective);
  // Whole body clears the obstacle: e_y - w >= -1 around s in [10, 14].
  EXPECT_LE(it.MaxSlack(), 1e-9);
  for (std::size_t j = 0; j <= g.N(); ++j) {
    const double s = g.stations[j];
    if (s + f.p.b >= 10.0 && s - f.p.a <= 14.0) {
      EXPECT_GE(it.states[j].e_y - f.p.w, -1.0 - 0.05) << "station " << j;
    }
  }
}

}  // namespace
}  // namespace slpplan
