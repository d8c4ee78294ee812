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

// Entry point shared by the CLI and the acceptance checks: runs one of the
// planners on a problem and packages the result per grid station.

#ifndef SLPPLAN_PLANNER_HPP_
#define SLPPLAN_PLANNER_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "slpplan/clothoid.hpp"
#include "slpplan/error.hpp"
#include "slpplan/frenet_frame.hpp"
#include "slpplan/problem.hpp"
#include "slpplan/slp_driver.hpp"
#include "slpplan/speed_profile.hpp"
#include "slpplan/vehicle_model.hpp"

namespace slpplan {

enum class Method { kSlp, kSlpp, kCpp };

inline const char* ToString(Method m) {
  switch (m) {
    case Method::kSlp: return "slp";
    case Method::kSlpp: return "slpp";
    case Method::kCpp: return "cpp";
  }
  return "unknown";
}

inline Method ParseMethod(const std::string& s) {
  if (s == "slp") return Method::kSlp;
  if (s == "slpp") return Method::kSlpp;
  if (s == "cpp") return Method::kCpp;
  throw Error(ErrorKind::kInvalidInput, "unknown method '" + s + "'");
}

struct StationRow {
  double s = 0.0;
  double e_psi = 0.0;
  double e_y = 0.0;
  double delta = 0.0;
  double x = 0.0;
  double y = 0.0;
  double eta = 0.0;
  double kappa = 0.0;
  double v_max = 0.0;
};

struct PlanResult {
  Method method = Method::kSlp;
  std::string scenario;
  std::vector<StationRow> rows;
  std::vector<double> global_heading;  // per row, for footprint drawing

  bool converged = false;
  int iterations = 0;
  std::string termination;
  std::vector<IterationDiagnostics> diagnostics;
  double objective = 0.0;
  double t_u = 0.0;
  double t_du = 0.0;
  double sigma = 0.0;
  double sigma_epsi_N = 0.0;
  double sigma_ey_N = 0.0;

  double T_s = 0.0;
  double v_min = 0.0;
  double eta_at_v_min = 0.0;
  double max_abs_delta = 0.0;
  // Largest |u_j - u_{j-1}| including the step from delta_prev.
  double max_delta_step = 0.0;
  bool merged_waypoints = false;

  // Context for plotting.
  RoadCenterline centerline;
  RoadWidth road;
  VehicleParams vehicle;
  std::vector<ObstacleEnvelope> envelopes;           // as mapped
  std::vector<ObstacleEnvelope> planning_envelopes;  // as planned against
  std::optional<Corridor> corridor;
  bool footprint = true;
  // Dense traveled-path samples (clothoid baseline only).
  std::vector<double> dense_x;
  std::vector<double> dense_y;
  std::vector<double> dense_eta;
  std::vector<double> dense_delta;
  std::vector<double> dense_v;

  double MaxSlack() const {
    return std::max({sigma, sigma_epsi_N, sigma_ey_N});
  }
};

namespace detail {

inline void FillCommon(const PlanningProblem& prob, PlanResult& res) {
  res.centerline = prob.centerline;
  res.road = prob.road;
  res.vehicle = prob.vehicle;
  res.envelopes = prob.envelopes;
}

inline Vec2 GlobalAt(const RoadCenterline& cl, double s, double e_y) {
  return FrenetToGlobal(cl, std::clamp(s, cl.s_begin(), cl.s_end()), e_y);
}

inline PlanResult PlanWithSlp(const PlanningProblem& prob_in, bool parallel,
                              const SlpRunOptions& run) {
  PlanningProblem prob = prob_in;
  prob.settings.parallel_overtake = parallel;
  const SlpOutcome out = RunSlp(prob, run);
  PlanResult res;
  res.method = parallel ? Method::kSlpp : Method::kSlp;
  FillCommon(prob, res);
  res.planning_envelopes = out.envelopes;
  res.corridor = out.corridor;
  res.footprint = prob.settings.footprint_enabled;
  res.converged = out.converged;
  res.iterations = out.report.iterations;
  res.termination = ToString(out.report.reason);
  res.diagnostics = out.report.per_iteration;
  res.objective = out.plan.objective;
  res.t_u = out.plan.t_u;
  res.t_du = out.plan.t_du;
  res.sigma = out.plan.sigma;
  res.sigma_epsi_N = out.plan.sigma_epsi_N;
  res.sigma_ey_N = out.plan.sigma_ey_N;
  res.T_s = out.T_s;

  const Grid& grid = out.grid;
  const std::size_t N = grid.N();
  const std::vector<double> eta =
      PathLength(out.plan.states, grid, prob.centerline);
  double prev = prob.delta_prev;
  for (double u : out.plan.inputs) {
    res.max_abs_delta = std::max(res.max_abs_delta, std::abs(u));
    res.max_delta_step = std::max(res.max_delta_step, std::abs(u - prev));
    prev = u;
  }
  res.v_min = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j <= N; ++j) {
    StationRow r;
    r.s = grid.stations[j];
    r.e_psi = out.plan.states[j].e_psi;
    r.e_y = out.plan.states[j].e_y;
    r.delta = out.plan.inputs[std::min(j, N - 1)];
    const Vec2 g = GlobalAt(prob.centerline, r.s, r.e_y);
    r.x = g.x();
    r.y = g.y();
    r.eta = eta[j];
    r.kappa = std::tan(r.delta) / prob.vehicle.l;
    r.v_max = VmaxFric(r.kappa, prob.vehicle.mu, prob.settings.v_cap);
    if (r.v_max < res.v_min) {
      res.v_min = r.v_max;
      res.eta_at_v_min = r.eta;
    }
    res.rows.push_back(r);
    res.global_heading.push_back(prob.centerline.Heading(r.s) + r.e_psi);
  }
  return res;
}

inline PlanResult PlanWithCpp(const PlanningProblem& prob) {
  const SolverSettings& set = prob.settings;
  set.Validate();
  prob.vehicle.Validate();
  CppSettings cs;
  cs.safety_margin = set.safety_margin;
  cs.sharpness_cap = set.cpp_sharpness_cap;
  const CppPlan cpp =
      PlanCpp(prob.centerline, prob.envelopes, prob.sides, prob.s_start,
              prob.start.e_y, prob.s_end(), prob.end.e_y, prob.vehicle, cs);

  PlanResult res;
  res.method = Method::kCpp;
  FillCommon(prob, res);
  auto [envs, corridor] = PlanningCorridor(prob, false, set.safety_margin);
  res.planning_envelopes = envs;
  res.corridor = corridor;
  res.footprint = false;
  res.converged = true;
  res.termination = "closed-form";
  res.merged_waypoints = cpp.merged_waypoints;
  res.dense_x = cpp.x;
  res.dense_y = cpp.y;
  res.dense_eta = cpp.eta;
  res.dense_delta = cpp.delta;
  res.dense_v = VmaxFric(cpp.kappa, prob.vehicle.mu, set.v_cap);
  res.v_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < res.dense_v.size(); ++i) {
    res.max_abs_delta = std::max(res.max_abs_delta, std::abs(cpp.delta[i]));
    if (res.dense_v[i] < res.v_min) {
      res.v_min = res.dense_v[i];
      res.eta_at_v_min = cpp.eta[i];
    }
  }

  const Grid grid = BuildGrid(prob.s_start, prob.horizon, set.N, envs);
  res.T_s = set.T_s > 0 ? set.T_s : grid.MeanStep() / set.v_ref;
  const auto& f = cpp.fitted;
  std::size_t k = 0;
  double prev_delta = prob.delta_prev;
  for (double s : grid.stations) {
    while (k + 2 < f.size() && f[k + 1].x < s) ++k;
    const PathSample& a = f[k];
    const PathSample& b = f[std::min(k + 1, f.size() - 1)];
    const double span = b.x - a.x;
    const double t = span > 0 ? std::clamp((s - a.x) / span, 0.0, 1.0) : 0.0;
    auto lerp = [t](double u, double v) { return u + t * (v - u); };
    const std::size_t kb = std::min(k + 1, f.size() - 1);
    StationRow r;
    r.s = s;
    r.e_y = lerp(a.y, b.y);
    const double slope = std::tan(lerp(a.psi, b.psi));
    r.e_psi = std::atan(slope / (1.0 - prob.centerline.Curvature(s) * r.e_y));
    r.eta = lerp(cpp.eta[k], cpp.eta[kb]);
    r.kappa = lerp(cpp.kappa[k], cpp.kappa[kb]);
    r.delta = std::atan(prob.vehicle.l * r.kappa);
    const Vec2 g = GlobalAt(prob.centerline, s, r.e_y);
    r.x = g.x();
    r.y = g.y();
    r.v_max = VmaxFric(r.kappa, prob.vehicle.mu, set.v_cap);
    res.max_delta_step = std::max(res.max_delta_step, std::abs(r.delta - prev_delta));
    prev_delta = r.delta;
    res.rows.push_back(r);
    res.global_heading.push_back(prob.centerline.Heading(s) + r.e_psi);
  }
  return res;
}

}  // namespace detail

inline PlanResult Plan(const PlanningProblem& prob, Method method,
                       const SlpRunOptions& run = {}) {
  switch (method) {
    case Method::kSlp: return detail::PlanWithSlp(prob, false, run);
    case Method::kSlpp: return detail::PlanWithSlp(prob, true, run);
    case Method::kCpp: return detail::PlanWithCpp(prob);
  }
  throw Error(ErrorKind::kInvalidInput, "unknown method");
}

}  // namespace slpplan

#endif  // SLPPLAN_PLANNER_HPP_
