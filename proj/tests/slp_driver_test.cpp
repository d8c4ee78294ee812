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

#include "slpplan/slp_driver.hpp"

#include <chrono>
#include <cstdio>
#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "slpplan/scenario.hpp"

namespace slpplan {
namespace {

const std::string kDir = SLPPLAN_SCENARIO_DIR;

PlanningProblem Load(const std::string& name) {
  return ToProblem(LoadScenario(kDir + "/" + name + ".json"));
}

RoadCenterline Straight() {
  return RoadCenterline::Build(std::vector<Vec2>{{0, 0}, {100, 0}}, 1.0);
}

TEST(InitReference, EmptyRoadGivesCenterline) {
  const auto cl = Straight();
  const Grid g = BuildGrid(0.0, 50.0, 50, {});
  const Corridor c = CorridorBounds({}, {}, RoadWidth::Constant(3.5), 1.8);
  const auto ref = InitReference(c, {}, {}, {}, {}, g, cl, VehicleParams{});
  ASSERT_EQ(ref.states.size(), 51u);
  ASSERT_EQ(ref.inputs.size(), 50u);
  for (const auto& z : ref.states) {
    EXPECT_EQ(z.e_psi, 0.0);
    EXPECT_EQ(z.e_y, 0.0);
  }
  for (double u : ref.inputs) EXPECT_EQ(u, 0.0);
}

// Exhaustive oracle: every ordered subset of the two near corners, kept only
// when the polyline stays above the obstacle; smallest steepest heading wins.
TEST(InitReference, SingleObstacleMatchesExhaustiveCandidates) {
  const auto cl = Straight();
  const std::vector<ObstacleEnvelope> envs{{10, 15, -3.5, 1.0, 0}};
  const std::vector<PassSide> sides{PassSide::kLeft};
  const Grid g = BuildGrid(0.0, 40.0, 80, envs);
  const Corridor c = CorridorBounds(envs, sides, RoadWidth::Constant(3.5), 0.0);
  const auto ref = InitReference(c, envs, sides, {0.0, 0.0}, {0.0, 0.0}, g, cl,
                                 VehicleParams{}, {false});

  struct P { double s, e; };
  const P start{0, 0}, end{40, 0}, c1{10, 1}, c2{15, 1};
  const std::vector<std::vector<P>> candidates{
      {start, end}, {start, c1, end}, {start, c2, end}, {start, c1, c2, end}};
  double best = 1e9;
  std::vector<P> best_path;
  for (const auto& path : candidates) {
    bool ok = true;
    double steepest = 0.0;
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      const double slope = (path[k + 1].e - path[k].e) / (path[k + 1].s - path[k].s);
      steepest = std::max(steepest, std::abs(std::atan(slope)));
      for (double s = path[k].s; s <= path[k + 1].s; s += 0.01) {
        const double e = path[k].e + slope * (s - path[k].s);
        if (s >= 10.0 && s <= 15.0 && e < 1.0 - 1e-9) ok = false;
      }
    }
    if (ok && steepest < best) {
      best = steepest;
      best_path = path;
    }
  }
  ASSERT_EQ(best_path.size(), 4u);
  double steepest = 0.0;
  for (std::size_t j = 0; j < g.stations.size(); ++j) {
    steepest = std::max(steepest, std::abs(ref.states[j].e_psi));
    const double s = g.stations[j];
    for (std::size_t k = 0; k + 1 < best_path.size(); ++k) {
      if (s >= best_path[k].s && s <= best_path[k + 1].s) {
        const double t = (s - best_path[k].s) / (best_path[k + 1].s - best_path[k].s);
        EXPECT_NEAR(ref.states[j].e_y,
                    best_path[k].e + t * (best_path[k + 1].e - best_path[k].e),
                    1e-12);
      }
    }
  }
  EXPECT_NEAR(steepest, best, 1e-12);
}

TEST(InitReference, BlockedCorridorFails) {
  const auto cl = Straight();
  // Gap above the obstacle is narrower than the vehicle.
  const std::vector<ObstacleEnvelope> envs{{10, 15, -3.5, 2.5, 0}};
  const std::vector<PassSide> sides{PassSide::kLeft};
  const Corridor c({10.0, 15.0}, {-3.5, 2.5, -3.5}, {3.5, 3.5, 3.5});
  const Grid g = BuildGrid(0.0, 40.0, 40, envs);
  try {
    InitReference(c, envs, sides, {}, {}, g, cl, VehicleParams{});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInitializationFailure);
  }
}

struct CheckFixture {
  RoadCenterline cl = Straight();
  Grid g = BuildGrid(0.0, 40.0, 40, {});
  Corridor c = CorridorBounds({}, {}, RoadWidth::Constant(3.5), 1.8);
  VehicleParams p;
};

TEST(TerminationCheck, CornerOutsideTheRoadFails) {
  CheckFixture f;
  std::vector<SpatialState> z(41, SpatialState{0.0, 0.0});
  z[20].e_y = 3.5 - f.p.w + 0.05;
  const auto res = TerminationCheck(z, {}, f.g, f.c, {}, f.p);
  EXPECT_FALSE(res.collision_free);
  EXPECT_FALSE(res.passed());
  EXPECT_NEAR(res.max_violation, 0.05, 1e-12);
  ASSERT_FALSE(res.reasons.empty());
  EXPECT_NE(res.reasons[0].find("corridor"), std::string::npos);

  z[20].e_y = 3.5 - f.p.w + 0.005;
  EXPECT_TRUE(TerminationCheck(z, {}, f.g, f.c, {}, f.p).passed());
}

TEST(TerminationCheck, OverlapWithObstacleFails) {
  CheckFixture f;
  const std::vector<ObstacleEnvelope> envs{{19, 22, -3.5, -0.5, 0}};
  std::vector<SpatialState> z(41, SpatialState{0.0, 0.0});
  const auto res = TerminationCheck(z, {}, f.g, f.c, envs, f.p);
  EXPECT_FALSE(res.collision_free);
  EXPECT_NEAR(res.max_violation, f.p.w - 0.5, 1e-12);
  for (auto& s : z) s.e_y = 1.0;
  EXPECT_TRUE(TerminationCheck(z, {}, f.g, f.c, envs, f.p).collision_free);
}

TEST(TerminationCheck, SawtoothHeadingIsJagged) {
  CheckFixture f;
  std::vector<SpatialState> z(41);
  for (std::size_t j = 0; j < z.size(); ++j) {
    z[j].e_psi = (j % 2 ? 1.0 : -1.0) * kDegToRad;
  }
  const auto res = TerminationCheck(z, {}, f.g, f.c, {}, f.p);
  EXPECT_TRUE(res.collision_free);
  EXPECT_FALSE(res.smooth);
  EXPECT_GE(res.longest_alternation, 3);
}

TEST(TerminationCheck, SmoothMonotoneHeadingPasses) {
  CheckFixture f;
  std::vector<SpatialState> z(41);
  for (std::size_t j = 0; j < z.size(); ++j) z[j].e_psi = 0.002 * j;
  const auto res = TerminationCheck(z, {}, f.g, f.c, {}, f.p);
  EXPECT_TRUE(res.smooth);
  EXPECT_EQ(res.longest_alternation, 0);
}

TEST(TerminationCheck, ShortAlternationsBelowThresholdPass) {
  std::vector<SpatialState> z(20);
  for (std::size_t j = 0; j < z.size(); ++j) {
    z[j].e_psi = (j % 2 ? 0.2 : -0.2) * kDegToRad;
  }
  EXPECT_EQ(LongestHeadingAlternation(z, 0.5 * kDegToRad), 0);
  z[5].e_psi = 2.0 * kDegToRad;
  z[6].e_psi = -2.0 * kDegToRad;
  EXPECT_EQ(LongestHeadingAlternation(z, 0.5 * kDegToRad), 2);
}

TEST(RunSlp, EquilibriumConvergesImmediately) {
  const PlanningProblem prob = Load("straight_equilibrium");
  const SlpOutcome out = RunSlp(prob);
  EXPECT_TRUE(out.converged);
  EXPECT_EQ(out.report.iterations, 1);
  for (double u : out.plan.inputs) EXPECT_EQ(u, 0.0);
  EXPECT_LE(out.plan.objective, 1e-9);
}

TEST(RunSlp, TightScenarioRespectsActuatorLimits) {
  const PlanningProblem prob = Load("tight_parking");
  const auto t0 = std::chrono::steady_clock::now();
  const SlpOutcome out = RunSlp(prob);
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0).count();
  EXPECT_LT(secs, 30.0);
  ASSERT_TRUE(out.converged);
  EXPECT_LE(out.report.iterations, 5);
  const double step = prob.vehicle.delta_rate_max * out.T_s;
  double prev = prob.delta_prev;
  for (double u : out.plan.inputs) {
    EXPECT_LE(std::abs(u), prob.vehicle.delta_max + 1e-9);
    EXPECT_LE(std::abs(u - prev), step + 1e-9);
    prev = u;
  }
  const auto& last = out.report.per_iteration.back();
  EXPECT_TRUE(last.check.collision_free);
  EXPECT_LE(last.check.max_violation, 0.01);
  EXPECT_LE(out.plan.MaxSlack(), prob.settings.slack_tol);
}

TEST(RunSlp, ReferenceOfNextIterationIsPreviousLpSolution) {
  const PlanningProblem prob = Load("tight_parking");
  SlpRunOptions run;
  run.min_iterations = 2;
  const SlpOutcome out = RunSlp(prob, run);
  ASSERT_GE(out.report.iterations, 2);
  // Iteration 2 linearizes about iteration 1; a converged fixed point has a
  // small model defect against the nonlinear simulation.
  for (const auto& d : out.report.per_iteration) {
    EXPECT_LT(d.model_defect, 0.5);
  }
}

TEST(RunSlp, RepeatedRunsAreBitIdentical) {
  const PlanningProblem prob = Load("roomy_curved");
  const SlpOutcome a = RunSlp(prob);
  const SlpOutcome b = RunSlp(prob);
  ASSERT_EQ(a.plan.inputs.size(), b.plan.inputs.size());
  for (std::size_t j = 0; j < a.plan.inputs.size(); ++j) {
    EXPECT_EQ(a.plan.inputs[j], b.plan.inputs[j]);
    EXPECT_EQ(a.plan.states[j].e_y, b.plan.states[j].e_y);
  }
  EXPECT_EQ(a.plan.objective, b.plan.objective);
}

// Warm-started LPs of later iterations should rarely need more pivots than a
// cold start on the same LP.
TEST(RunSlp, WarmStartRarelyLosesToColdStart) {
  int recorded = 0;
  int not_worse = 0;
  for (const char* name : {"straight_equilibrium", "tight_parking", "roomy_curved"}) {
    for (bool parallel : {false, true}) {
      PlanningProblem prob = Load(name);
      prob.settings.parallel_overtake = parallel;
      SlpRunOptions run;
      run.compare_cold = true;
      run.min_iterations = 3;
      prob.settings.I_max = 3;
      const SlpOutcome out = RunSlp(prob, run);
      for (const auto& d : out.report.per_iteration) {
        if (d.cold_pivots < 0) continue;
        ++recorded;
        EXPECT_TRUE(d.warm_started) << name << " iteration " << d.iteration;
        if (d.pivots <= d.cold_pivots) ++not_worse;
      }
    }
  }
  ASSERT_GT(recorded, 0);
  std::printf("warm start not worse on %d of %d LPs\n", not_worse, recorded);
  EXPECT_GE(not_worse, 0.8 * recorded);
}

}  // namespace
}  // namespace slpplan
