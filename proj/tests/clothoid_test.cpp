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

#include "slpplan/clothoid.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

namespace slpplan {
namespace {

// Composite Simpson rule.
template <class F>
double Simpson(F f, double a, double b, int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return acc * h / 3.0;
}

TEST(Fresnel, MatchesQuadrature) {
  const double pi = std::numbers::pi;
  for (double t : {0.05, 0.3, 0.9, 1.49, 1.51, 2.2, 3.7, 6.0}) {
    const int n = static_cast<int>(t * 20000) + 2;
    const double c = Simpson([&](double x) { return std::cos(0.5 * pi * x * x); }, 0.0, t, n);
    const double s = Simpson([&](double x) { return std::sin(0.5 * pi * x * x); }, 0.0, t, n);
    const FresnelCS f = Fresnel(t);
    EXPECT_NEAR(f.C, c, 1e-11) << "t=" << t;
    EXPECT_NEAR(f.S, s, 1e-11) << "t=" << t;
  }
}

TEST(Fresnel, OddSymmetryAndLimit) {
  const FresnelCS a = Fresnel(1.7);
  const FresnelCS b = Fresnel(-1.7);
  EXPECT_DOUBLE_EQ(a.C, -b.C);
  EXPECT_DOUBLE_EQ(a.S, -b.S);
  const FresnelCS far = Fresnel(1e4);
  EXPECT_NEAR(far.C, 0.5, 1e-4);
  EXPECT_NEAR(far.S, 0.5, 1e-4);
  EXPECT_EQ(Fresnel(0.0).C, 0.0);
}

TEST(ClothoidSegment, PositionMatchesIntegratedHeading) {
  for (double c : {0.8, -0.35, 0.0}) {
    ClothoidSegment seg;
    seg.start = {1.0, -2.0, 0.4};
    seg.kappa0 = -0.2;
    seg.sharpness = c;
    seg.length = 3.0;
    for (double eta : {0.5, 1.7, 3.0}) {
      const double x = seg.start.x + Simpson([&](double t) { return std::cos(seg.Heading(t)); }, 0.0, eta, 20000);
      const double y = seg.start.y + Simpson([&](double t) { return std::sin(seg.Heading(t)); }, 0.0, eta, 20000);
      const Pose2 p = seg.At(eta);
      EXPECT_NEAR(p.x, x, 1e-10) << "c=" << c << " eta=" << eta;
      EXPECT_NEAR(p.y, y, 1e-10) << "c=" << c << " eta=" << eta;
      EXPECT_NEAR(seg.Kappa(eta), -0.2 + c * eta, 1e-15);
    }
  }
}

TEST(LaneChange, ClosesOnTheTargetWithZeroHeading) {
  for (double dy : {0.5, -2.0, 3.5}) {
    const double dx = 12.0;
    const std::vector<CppWaypoint> wp{{0.0, 0.0, false}, {dx, dy, false}};
    const PrimitivePath path = FitPrimitivePath(wp, CppSettings{});
    ASSERT_EQ(path.segments.size(), 4u);
    const Pose2 end = path.segments.back().End();
    EXPECT_NEAR(end.x, dx, 1e-10);
    EXPECT_NEAR(end.y, dy, 1e-10);
    EXPECT_NEAR(end.psi, 0.0, 1e-12);
    const auto& last = path.segments.back();
    EXPECT_NEAR(last.Kappa(last.length), 0.0, 1e-12);

    // Point symmetry about the midpoint.
    const Pose2 mid = path.segments[1].End();
    EXPECT_NEAR(mid.x, 0.5 * dx, 1e-10);
    EXPECT_NEAR(mid.y, 0.5 * dy, 1e-10);
    const LaneChangeShape sh = SolveLaneChange(dx, dy);
    EXPECT_NEAR(mid.psi, sh.theta, 1e-12);
    EXPECT_NEAR(std::abs(sh.theta), 2.0 * std::atan(std::abs(dy) / dx), 1e-15);
    EXPECT_NEAR(sh.kappa_peak, sh.sharpness * sh.piece, 1e-12);
  }
}

TEST(LaneChange, TooSteepIsInfeasible) {
  try {
    SolveLaneChange(0.1, 10.0);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kCppInfeasible);
  }
  CppSettings set;
  set.sharpness_cap = 0.01;
  const std::vector<CppWaypoint> wp{{0.0, 0.0, false}, {5.0, 2.0, false}};
  EXPECT_THROW(FitPrimitivePath(wp, set), Error);
}

TEST(Waypoints, InflatedCornersOnThePassingSide) {
  const std::vector<ObstacleEnvelope> envs{{30, 35, 1.0, 3.5, 0},
                                           {10, 15, -3.5, -1.0, 0}};
  const std::vector<PassSide> sides{PassSide::kRight, PassSide::kLeft};
  const auto wp = CppWaypoints(envs, sides, 0.0, 0.0, 50.0, 0.5, 1.1);
  ASSERT_EQ(wp.size(), 6u);
  EXPECT_DOUBLE_EQ(wp[1].s, 8.9);
  EXPECT_NEAR(wp[1].e_y, 0.1, 1e-12);
  EXPECT_DOUBLE_EQ(wp[2].s, 16.1);
  EXPECT_DOUBLE_EQ(wp[3].s, 28.9);
  EXPECT_NEAR(wp[3].e_y, -0.1, 1e-12);
  EXPECT_DOUBLE_EQ(wp[5].e_y, 0.5);
}

TEST(Waypoints, OverlappingCornersMergeAtTheMidpoint) {
  const std::vector<ObstacleEnvelope> envs{{10, 15, -3.5, -1.0, 0},
                                           {16, 20, -3.5, 0.0, 0}};
  const std::vector<PassSide> sides{PassSide::kLeft, PassSide::kLeft};
  const auto wp = CppWaypoints(envs, sides, 0.0, 0.0, 40.0, 0.0, 1.1);
  ASSERT_EQ(wp.size(), 5u);
  EXPECT_TRUE(wp[2].merged);
  EXPECT_DOUBLE_EQ(wp[2].s, 0.5 * (16.1 + 14.9));
  EXPECT_DOUBLE_EQ(wp[2].e_y, 0.5 * (0.1 + 1.1));
}

TEST(Steering, ReconstructionInvertsTheBicycleModel) {
  VehicleParams p;
  p.l = 4.3;
  const std::vector<double> k{0.0, 0.1, -0.25};
  const auto d = ReconstructSteering(k, p);
  for (std::size_t i = 0; i < k.size(); ++i) {
    EXPECT_DOUBLE_EQ(std::tan(d[i]) / p.l, k[i]);
  }
}

TEST(PlanCpp, StraightRoadCurvatureFollowsThePrimitives) {
  const auto cl = RoadCenterline::Build(std::vector<Vec2>{{0, 0}, {80, 0}}, 1.0);
  const std::vector<ObstacleEnvelope> envs{{20, 25, -3.5, -1.0, 0}};
  const std::vector<PassSide> sides{PassSide::kLeft};
  VehicleParams p;
  const CppPlan plan = PlanCpp(cl, envs, sides, 0.0, -2.0, 60.0, -2.0, p, CppSettings{});
  ASSERT_EQ(plan.kappa.size(), plan.fitted.size());
  double peak = 0.0;
  for (std::size_t i = 1; i + 1 < plan.fitted.size(); ++i) {
    EXPECT_NEAR(plan.x[i], plan.fitted[i].x, 1e-9);
    EXPECT_NEAR(plan.y[i], plan.fitted[i].y, 1e-9);
    // First-order differences track the analytic curvature to O(step).
    EXPECT_NEAR(plan.kappa[i], plan.fitted[i].kappa, 0.02);
    peak = std::max(peak, std::abs(plan.kappa[i]));
  }
  const LaneChangeShape sh = SolveLaneChange(18.9 - 0.0, 0.1 - (-2.0));
  EXPECT_NEAR(peak, sh.kappa_peak, 0.02);
  EXPECT_NEAR(plan.eta.back(), plan.path.Length(), 1e-3);
  EXPECT_FALSE(plan.merged_waypoints);
}

}  // namespace
}  // namespace slpplan
