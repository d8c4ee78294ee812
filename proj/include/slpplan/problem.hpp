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

// Solver settings and the planning problem in road-aligned coordinates.

#ifndef SLPPLAN_PROBLEM_HPP_
#define SLPPLAN_PROBLEM_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "slpplan/error.hpp"
#include "slpplan/frenet_frame.hpp"
#include "slpplan/speed_profile.hpp"
#include "slpplan/vehicle_model.hpp"

namespace slpplan {

struct SolverSettings {
  std::size_t N = 200;
  int I_max = 5;
  double lambda = 1.0;
  double w_sigma = 1e4;
  // Rate-constraint time step [s]; 0 derives it as mean grid step / v_ref.
  double T_s = 0.0;
  double v_ref = 10.0;
  bool parallel_overtake = false;
  bool footprint_enabled = true;
  double safety_margin = 0.0;
  // Termination check.
  int jag_alternations = 3;
  double jag_threshold = 0.5 * kDegToRad;
  double collision_tol = 0.01;
  // Speed bound and clothoid baseline.
  double v_cap = kDefaultSpeedCap;
  double cpp_sharpness_cap = 50.0;
  // Final slack above which a plan counts as infeasible.
  double slack_tol = 1e-3;

  void Validate() const {
    auto fail = [](const std::string& what) {
      throw Error(ErrorKind::kInvalidInput, "settings: " + what);
    };
    if (N < 2) fail("N must be at least 2");
    if (I_max < 1) fail("I_max must be at least 1");
    if (!(lambda >= 0)) fail("lambda must be nonnegative");
    if (!(w_sigma > 0)) fail("W_sigma must be positive");
    if (!(T_s >= 0)) fail("T_s must be positive when given");
    if (T_s == 0.0 && !(v_ref > 0)) fail("v_ref must be positive");
    if (!(safety_margin >= 0)) fail("safety_margin must be nonnegative");
    if (jag_alternations < 1) fail("jag_alternations must be positive");
    if (!(jag_threshold >= 0)) fail("jag_threshold must be nonnegative");
    if (!(collision_tol >= 0)) fail("collision_tol must be nonnegative");
    if (!(v_cap > 0)) fail("v_cap must be positive");
    if (!(cpp_sharpness_cap > 0)) fail("cpp_sharpness_cap must be positive");
  }
};

struct PlanningProblem {
  RoadCenterline centerline;
  RoadWidth road;
  std::vector<ObstacleEnvelope> envelopes;
  std::vector<PassSide> sides;
  VehicleParams vehicle;
  double s_start = 0.0;
  double horizon = 0.0;
  SpatialState start;
  double delta_prev = 0.0;
  SpatialState end;
  SolverSettings settings;

  double s_end() const { return s_start + horizon; }
};

}  // namespace slpplan

#endif  // SLPPLAN_PROBLEM_HPP_
