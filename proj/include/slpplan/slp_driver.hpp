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

// Sequential linear programming: initialize a piecewise-affine reference,
// then repeatedly linearize about the latest iterate, solve the LP and check
// the result against the nonlinear vehicle footprint and for heading
// jaggedness.

#ifndef SLPPLAN_SLP_DRIVER_HPP_
#define SLPPLAN_SLP_DRIVER_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "slpplan/error.hpp"
#include "slpplan/footprint.hpp"
#include "slpplan/frenet_frame.hpp"
#include "slpplan/lp_assembly.hpp"
#include "slpplan/lp_solver.hpp"
#include "slpplan/problem.hpp"
#include "slpplan/vehicle_model.hpp"

namespace slpplan {

struct ReferenceTrajectory {
  std::vector<SpatialState> states;
  std::vector<double> inputs;
};

struct InitOptions {
  // Keep the whole footprint (half width w, front/rear overhangs) clear;
  // otherwise the reference point alone must stay inside the corridor.
  bool footprint = true;
};

// Piecewise-affine e_y(s) from the start through passing-side corner
// candidates to the end, chosen to minimize the steepest segment (then the
// number of segments).
inline ReferenceTrajectory InitReference(
    const Corridor& corridor, std::span<const ObstacleEnvelope> envelopes,
    std::span<const PassSide> sides, const SpatialState& start,
    const SpatialState& end, const Grid& grid, const RoadCenterline& cl,
    const VehicleParams& p, const InitOptions& opt = {}) {
  const double s0 = grid.stations.front();
  const double s1 = grid.stations.back();
  const double shrink = opt.footprint ? p.w : 0.0;
  struct Node {
    double s;
    double e;
  };
  std::vector<Node> nodes{{s0, start.e_y}};
  for (std::size_t i = 0; i < envelopes.size(); ++i) {
    const ObstacleEnvelope& env = envelopes[i];
    const bool left = sides[i] == PassSide::kLeft;
    const double e = left ? env.e_y_high + shrink : env.e_y_low - shrink;
    const double sb = opt.footprint ? env.s_begin - p.b : env.s_begin;
    const double se = opt.footprint ? env.s_end + p.a : env.s_end;
    for (double s : {sb, se}) {
      if (s > s0 + 1e-9 && s < s1 - 1e-9) nodes.push_back({s, e});
    }
  }
  std::stable_sort(nodes.begin() + 1, nodes.end(),
                   [](const Node& a, const Node& b) { return a.s < b.s; });
  nodes.push_back({s1, end.e_y});

  auto segment_ok = [&](const Node& a, const Node& b) {
    constexpr double kTol = 1e-9;
    const double slope = (b.e - a.e) / (b.s - a.s);
    for (double s : grid.stations) {
      if (s < a.s - kTol || s > b.s + kTol) continue;
      const double e = a.e + slope * (s - a.s);
      if (e < corridor.LowerAt(s) + shrink - kTol ||
          e > corridor.UpperAt(s) - shrink + kTol) {
        // The endpoints themselves may sit on a bound.
        return false;
      }
    }
    return true;
  };

  const std::size_t n = nodes.size();
  constexpr double kUnreached = std::numeric_limits<double>::infinity();
  std::vector<double> cost(n, kUnreached);
  std::vector<std::size_t> segs(n, 0);
  std::vector<std::size_t> prev(n, n);
  cost[0] = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = 0; i < k; ++i) {
      if (cost[i] == kUnreached) continue;
      if (!(nodes[k].s > nodes[i].s + 1e-9)) continue;
      if (!segment_ok(nodes[i], nodes[k])) continue;
      const double heading = std::abs(
          std::atan((nodes[k].e - nodes[i].e) / (nodes[k].s - nodes[i].s)));
      const double c = std::max(cost[i], heading);
      const std::size_t sg = segs[i] + 1;
      if (c < cost[k] - 1e-12 || (std::abs(c - cost[k]) <= 1e-12 && sg < segs[k])) {
        cost[k] = c;
        segs[k] = sg;
        prev[k] = i;
      }
    }
  }
  if (cost[n - 1] == kUnreached) {
    throw Error(ErrorKind::kInitializationFailure,
                "no collision-free piecewise-affine path through the corridor");
  }
  std::vector<Node> path;
  for (std::size_t k = n - 1; k != n; k = prev[k]) {
    path.push_back(nodes[k]);
    if (k == 0) break;
  }
  std::reverse(path.begin(), path.end());

  ReferenceTrajectory ref;
  const std::size_t N = grid.N();
  std::size_t seg = 0;
  for (std::size_t j = 0; j <= N; ++j) {
    const double s = grid.stations[j];
    while (seg + 2 < path.size() && s >= path[seg + 1].s - 1e-12) ++seg;
    const Node& a = path[seg];
    const Node& b = path[seg + 1];
    const double slope = (b.e - a.e) / (b.s - a.s);
    const double e = a.e + slope * (s - a.s);
    const double scale = 1.0 - cl.Curvature(s) * e;
    constexpr double kClip = 88.0 * kDegToRad;
    const double psi = std::clamp(std::atan(slope / scale), -kClip, kClip);
    ref.states.push_back({psi, e});
  }
  ref.states.front() = start;
  ref.inputs.assign(N, 0.0);
  return ref;
}

struct TerminationResult {
  bool collision_free = true;
  bool smooth = true;
  // Largest corridor or obstacle violation found [m].
  double max_violation = 0.0;
  int longest_alternation = 0;
  std::vector<std::string> reasons;

  bool passed() const { return collision_free && smooth; }
};

struct TerminationOptions {
  bool footprint = true;
  double collision_tol = 0.01;
  int jag_alternations = 3;
  double jag_threshold = 0.5 * kDegToRad;
};

namespace detail {

// Penetration depth of a convex quadrilateral into an axis-aligned box via
// separating axes; zero or negative means separated.
inline double PenetrationDepth(const Corners& quad, const ObstacleEnvelope& box) {
  std::array<std::array<double, 2>, 4> axes;
  axes[0] = {1.0, 0.0};
  axes[1] = {0.0, 1.0};
  const double ex = quad[0].s - quad[1].s;
  const double ey = quad[0].e_y - quad[1].e_y;
  const double len = std::hypot(ex, ey);
  axes[2] = {ex / len, ey / len};
  axes[3] = {-ey / len, ex / len};
  const std::array<std::array<double, 2>, 4> bx{{{box.s_begin, box.e_y_low},
                                                 {box.s_end, box.e_y_low},
                                                 {box.s_end, box.e_y_high},
                                                 {box.s_begin, box.e_y_high}}};
  double depth = std::numeric_limits<double>::infinity();
  for (const auto& ax : axes) {
    double qmin = std::numeric_limits<double>::infinity();
    double qmax = -qmin;
    double bmin = qmin;
    double bmax = -qmin;
    for (const FrenetPoint& c : quad) {
      const double v = c.s * ax[0] + c.e_y * ax[1];
      qmin = std::min(qmin, v);
      qmax = std::max(qmax, v);
    }
    for (const auto& c : bx) {
      const double v = c[0] * ax[0] + c[1] * ax[1];
      bmin = std::min(bmin, v);
      bmax = std::max(bmax, v);
    }
    depth = std::min(depth, std::min(qmax - bmin, bmax - qmin));
  }
  return depth;
}

}  // namespace detail

inline int LongestHeadingAlternation(std::span<const SpatialState> states,
                                     double threshold) {
  int longest = 0;
  int run = 0;
  for (std::size_t j = 0; j + 2 < states.size(); ++j) {
    const double d0 = states[j + 1].e_psi - states[j].e_psi;
    const double d1 = states[j + 2].e_psi - states[j + 1].e_psi;
    const bool alt = std::abs(d0) > threshold && std::abs(d1) > threshold &&
                     (d0 > 0) != (d1 > 0);
    run = alt ? run + 1 : 0;
    longest = std::max(longest, run);
  }
  return longest;
}

inline TerminationResult TerminationCheck(
    std::span<const SpatialState> states, std::span<const double> inputs,
    const Grid& grid, const Corridor& corridor,
    std::span<const ObstacleEnvelope> envelopes, const VehicleParams& p,
    const TerminationOptions& opt = {}) {
  (void)inputs;
  TerminationResult res;
  auto note = [&](double violation, const std::string& what) {
    res.max_violation = std::max(res.max_violation, violation);
    if (violation > opt.collision_tol) {
      if (res.collision_free) res.reasons.push_back(what);
      res.collision_free = false;
    }
  };
  for (std::size_t j = 0; j < states.size(); ++j) {
    const double s = grid.stations[j];
    if (!opt.footprint) {
      const double e = states[j].e_y;
      note(std::max(corridor.LowerAt(s) - e, e - corridor.UpperAt(s)),
           "reference point leaves the corridor at s=" + std::to_string(s));
      continue;
    }
    const Corners c = CornerPositions(s, states[j], p);
    for (const FrenetPoint& q : c) {
      note(std::max(corridor.LowerAt(q.s) - q.e_y, q.e_y - corridor.UpperAt(q.s)),
           "vehicle corner leaves the corridor at s=" + std::to_string(q.s));
    }
    for (const ObstacleEnvelope& env : envelopes) {
      note(detail::PenetrationDepth(c, env),
           "vehicle overlaps an obstacle at s=" + std::to_string(s));
    }
  }
  res.longest_alternation =
      LongestHeadingAlternation(states, opt.jag_threshold);
  if (res.longest_alternation >= opt.jag_alternations) {
    res.smooth = false;
    res.reasons.push_back("jagged heading (" +
                          std::to_string(res.longest_alternation) +
                          " consecutive alternations)");
  }
  return res;
}

struct IterationDiagnostics {
  int iteration = 0;
  double objective = 0.0;
  double max_slack = 0.0;
  long pivots = 0;
  long cold_pivots = -1;  // only when requested
  bool warm_started = false;
  std::size_t lp_rows = 0;
  std::size_t lp_vars = 0;
  // Largest gap between LP states and the nonlinear simulation [m].
  double model_defect = 0.0;
  TerminationResult check;
};

enum class Termination { kConverged, kIterationCap };

inline const char* ToString(Termination t) {
  return t == Termination::kConverged ? "converged" : "iteration-cap";
}

struct SlpReport {
  int iterations = 0;
  Termination reason = Termination::kIterationCap;
  std::vector<IterationDiagnostics> per_iteration;
};

struct SlpOutcome {
  Grid grid;
  double T_s = 0.0;
  std::vector<ObstacleEnvelope> envelopes;  // as used (possibly inflated)
  std::optional<Corridor> corridor;
  ReferenceTrajectory initial;
  LpIterate plan;
  SlpReport report;
  bool converged = false;
};

struct SlpRunOptions {
  // Also cold-solve every warm-started LP to compare pivot counts.
  bool compare_cold = false;
  // Keep iterating until at least this many LPs were solved, even if the
  // check already passed. Diagnostics only; planning uses 1.
  int min_iterations = 1;
  SimplexOptions simplex;
};

// Envelopes and corridor as seen by the planner. Without footprint
// constraints the obstacles and road edges are moved in by the margin.
inline std::pair<std::vector<ObstacleEnvelope>, Corridor> PlanningCorridor(
    const PlanningProblem& prob, bool footprint, double margin) {
  std::vector<ObstacleEnvelope> envs;
  RoadWidth road = prob.road;
  if (footprint) {
    envs = prob.envelopes;
  } else {
    for (const auto& e : prob.envelopes) envs.push_back(e.Inflated(margin));
    for (double& hw : road.halfwidth) hw -= margin;
  }
  Corridor c = CorridorBounds(envs, prob.sides, road,
                              footprint ? 2.0 * prob.vehicle.w : 0.0);
  return {std::move(envs), std::move(c)};
}

inline SlpOutcome RunSlp(const PlanningProblem& prob,
                         const SlpRunOptions& run = {}) {
  const SolverSettings& set = prob.settings;
  const VehicleParams& p = prob.vehicle;
  set.Validate();
  p.Validate();
  const bool fp = set.footprint_enabled;

  SlpOutcome out;
  auto [envs, corridor] = PlanningCorridor(prob, fp, set.safety_margin);
  out.envelopes = std::move(envs);
  out.corridor = corridor;
  out.grid = BuildGrid(prob.s_start, prob.horizon, set.N, out.envelopes);
  const Grid& grid = out.grid;
  const std::size_t N = grid.N();
  if (!prob.centerline.Contains(grid.stations.front()) ||
      !prob.centerline.Contains(grid.stations.back())) {
    throw Error(ErrorKind::kOutOfRange, "planning horizon leaves the road");
  }
  out.T_s = set.T_s > 0 ? set.T_s : grid.MeanStep() / set.v_ref;

  out.initial = InitReference(corridor, out.envelopes, prob.sides, prob.start,
                              prob.end, grid, prob.centerline, p, {fp});
  ReferenceTrajectory ref = out.initial;

  AssemblySettings as;
  as.lambda = set.lambda;
  as.w_sigma = set.w_sigma;
  as.delta_max = p.delta_max;
  as.delta_step_max = p.delta_rate_max * out.T_s;
  as.u_prev = prob.delta_prev;

  TerminationOptions topt;
  topt.footprint = fp;
  topt.collision_tol = set.collision_tol;
  topt.jag_alternations = set.jag_alternations;
  topt.jag_threshold = set.jag_threshold;

  std::optional<LinearProgram> prev_lp;
  Basis prev_basis;
  std::optional<std::pair<double, LpIterate>> best;

  for (int it = 1; it <= set.I_max; ++it) {
    IterationDiagnostics diag;
    diag.iteration = it;
    LpSolution sol;
    AssembledLp alp;
    try {
      const auto stages = LinearizeDiscretize(grid, ref.states, ref.inputs,
                                              prob.centerline, p);
      std::vector<FootprintConstraintBlock> blocks;
      if (fp) {
        for (std::size_t j = 1; j < N; ++j) {
          blocks.push_back(PruneDominatedRows(
              LinearizedBlock(j, ref.states[j], grid, corridor, p), grid,
              corridor));
        }
      }
      alp = Assemble(stages, grid, corridor, blocks, prob.start, prob.end, as);
      if (set.parallel_overtake) {
        AddParallelOvertake(alp, out.envelopes, grid);
      }
    } catch (const Error& e) {
      throw Error(e.kind(),
                  "SLP iteration " + std::to_string(it) + ": " + e.what());
    }
    if (prev_lp) {
      sol = WarmStartSolve(alp.lp, RemapBasis(prev_basis, *prev_lp, alp.lp),
                           run.simplex);
      if (run.compare_cold) diag.cold_pivots = Solve(alp.lp, run.simplex).pivots();
    } else {
      sol = Solve(alp.lp, run.simplex);
    }
    if (sol.status != LpStatus::kOptimal) {
      throw Error(ErrorKind::kSolverBreakdown,
                  "SLP iteration " + std::to_string(it) + ": LP " +
                      ToString(sol.status) +
                      (sol.message.empty() ? "" : " (" + sol.message + ")"));
    }
    LpIterate iterate = ExtractIterate(alp.vars, sol.x, sol.objective);
    diag.objective = sol.objective;
    diag.max_slack = iterate.MaxSlack();
    diag.pivots = sol.pivots();
    diag.warm_started = sol.warm_started;
    diag.lp_rows = alp.lp.num_eq() + alp.lp.num_in();
    diag.lp_vars = alp.lp.num_vars();
    try {
      const auto sim = SimulateNonlinear(prob.start, iterate.inputs, grid,
                                         prob.centerline, p);
      for (std::size_t j = 0; j <= N; ++j) {
        diag.model_defect = std::max(
            diag.model_defect, std::abs(sim[j].e_y - iterate.states[j].e_y));
      }
    } catch (const Error&) {
      diag.model_defect = std::numeric_limits<double>::infinity();
    }
    diag.check = TerminationCheck(iterate.states, iterate.inputs, grid,
                                  corridor, out.envelopes, p, topt);
    const bool pass = diag.check.passed();
    const double score = (pass ? 0.0 : 1.0) + diag.check.max_violation +
                         diag.max_slack;
    if (!best || score < best->first) best = {score, iterate};

    out.report.per_iteration.push_back(diag);
    out.report.iterations = it;
    ref.states = iterate.states;
    ref.inputs = iterate.inputs;
    prev_basis = std::move(sol.basis);
    prev_lp = std::move(alp.lp);
    if (pass && it >= run.min_iterations) {
      out.report.reason = Termination::kConverged;
      out.converged = true;
      out.plan = std::move(iterate);
      return out;
    }
  }
  out.report.reason = Termination::kIterationCap;
  out.plan = std::move(best->second);
  return out;
}

}  // namespace slpplan

#endif  // SLPPLAN_SLP_DRIVER_HPP_
