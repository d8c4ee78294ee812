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

// Sparse (non-condensed) LP for one SLP iteration.
//
// Variables: inputs u_0..u_{N-1}, states z_0..z_N, the epigraph bounds t_u and
// t_du of the two max-terms in the objective, and the nonnegative slacks
// sigma (corridor and footprint), sigma_epsi_N and sigma_ey_N (terminal
// pose). The objective is
//
//   t_u + lambda t_du + W_sigma (sigma + sigma_epsi_N + sigma_ey_N).

#ifndef SLPPLAN_LP_ASSEMBLY_HPP_
#define SLPPLAN_LP_ASSEMBLY_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "slpplan/error.hpp"
#include "slpplan/footprint.hpp"
#include "slpplan/frenet_frame.hpp"
#include "slpplan/linear_program.hpp"
#include "slpplan/vehicle_model.hpp"

namespace slpplan {

struct AssemblySettings {
  double lambda = 1.0;
  double w_sigma = 1e4;
  double delta_max = 40.0 * kDegToRad;
  // Largest change between consecutive inputs, delta_rate_max * T_s.
  double delta_step_max = 0.05;
  // Last applied steering command u_{-1}.
  double u_prev = 0.0;
};

struct VariableMap {
  std::size_t N = 0;
  int u0 = 0;
  int z0 = 0;
  int t_u = 0;
  int t_du = 0;
  int sigma = 0;
  int sigma_epsi_N = 0;
  int sigma_ey_N = 0;

  int u(std::size_t j) const { return u0 + static_cast<int>(j); }
  int e_psi(std::size_t j) const { return z0 + 2 * static_cast<int>(j); }
  int e_y(std::size_t j) const { return z0 + 2 * static_cast<int>(j) + 1; }
};

struct AssembledLp {
  LinearProgram lp;
  VariableMap vars;
};

// Row keys identify inequality rows across SLP iterations for basis reuse.
enum class RowKind : std::int64_t {
  kInputAbs = 1,
  kInputDiff,
  kRate,
  kTerminal,
  kCorridor,
  kFootprintLower,
  kFootprintUpper,
  kParallel,
};

inline std::int64_t RowKey(RowKind kind, std::size_t a, std::size_t b = 0,
                           std::size_t sign = 0) {
  return (static_cast<std::int64_t>(kind) << 48) |
         (static_cast<std::int64_t>(a) << 26) |
         (static_cast<std::int64_t>(b) << 2) | static_cast<std::int64_t>(sign);
}

// First-difference operator on (u_0..u_{N-1}); the first row references the
// constant u_{-1}, so D1 u + offset gives (u_0 - u_{-1}, u_1 - u_0, ...).
inline Eigen::MatrixXd FirstDifference(std::size_t N) {
  const auto n = static_cast<Eigen::Index>(N);
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    D(j, j) = 1.0;
    if (j > 0) D(j, j - 1) = -1.0;
  }
  return D;
}

inline Eigen::VectorXd FirstDifferenceOffset(std::size_t N, double u_prev) {
  Eigen::VectorXd off = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(N));
  if (N > 0) off(0) = -u_prev;
  return off;
}

inline AssembledLp Assemble(std::span<const LinearizedStage> stages,
                            const Grid& grid, const Corridor& corridor,
                            std::span<const FootprintConstraintBlock> blocks,
                            const SpatialState& start, const SpatialState& end,
                            const AssemblySettings& set) {
  const std::size_t N = stages.size();
  if (N < 1 || grid.N() != N) {
    throw Error(ErrorKind::kDimensionMismatch,
                "stage count " + std::to_string(N) + " vs grid intervals " +
                    std::to_string(grid.N()));
  }
  AssembledLp out;
  LinearProgram& lp = out.lp;
  VariableMap& v = out.vars;
  v.N = N;

  for (std::size_t j = 0; j < N; ++j) {
    const int idx = lp.AddVariable("u[" + std::to_string(j) + "]",
                                   -set.delta_max, set.delta_max);
    if (j == 0) v.u0 = idx;
  }
  for (std::size_t j = 0; j <= N; ++j) {
    const double lo_psi = j == 0 ? start.e_psi : -kInf;
    const double hi_psi = j == 0 ? start.e_psi : kInf;
    const double lo_y = j == 0 ? start.e_y : -kInf;
    const double hi_y = j == 0 ? start.e_y : kInf;
    const int idx =
        lp.AddVariable("epsi[" + std::to_string(j) + "]", lo_psi, hi_psi);
    lp.AddVariable("ey[" + std::to_string(j) + "]", lo_y, hi_y);
    if (j == 0) v.z0 = idx;
  }
  v.t_u = lp.AddVariable("t_u", 0.0, kInf, 1.0);
  v.t_du = lp.AddVariable("t_du", 0.0, kInf, set.lambda);
  v.sigma = lp.AddVariable("sigma", 0.0, kInf, set.w_sigma);
  v.sigma_epsi_N = lp.AddVariable("sigma_epsi_N", 0.0, kInf, set.w_sigma);
  v.sigma_ey_N = lp.AddVariable("sigma_ey_N", 0.0, kInf, set.w_sigma);

  // Dynamics z_{j+1} = A_j z_j + B_j u_j + g_j.
  for (std::size_t j = 0; j < N; ++j) {
    const LinearizedStage& st = stages[j];
    for (int r = 0; r < 2; ++r) {
      SparseRow row;
      row.Add(r == 0 ? v.e_psi(j + 1) : v.e_y(j + 1), 1.0);
      row.Add(v.e_psi(j), -st.A(r, 0));
      row.Add(v.e_y(j), -st.A(r, 1));
      if (st.B(r) != 0.0) row.Add(v.u(j), -st.B(r));
      lp.AddEquality(std::move(row), st.g(r));
    }
  }

  // |u_j| <= t_u and |u_j - u_{j-1}| <= t_du, plus the hard rate limit.
  for (std::size_t j = 0; j < N; ++j) {
    lp.AddLessEqual(SparseRow().Add(v.u(j), 1.0).Add(v.t_u, -1.0), 0.0,
                    RowKey(RowKind::kInputAbs, j, 0, 0));
    lp.AddLessEqual(SparseRow().Add(v.u(j), -1.0).Add(v.t_u, -1.0), 0.0,
                    RowKey(RowKind::kInputAbs, j, 0, 1));
    SparseRow diff;
    diff.Add(v.u(j), 1.0);
    double c = 0.0;
    if (j == 0) {
      c = set.u_prev;
    } else {
      diff.Add(v.u(j - 1), -1.0);
    }
    SparseRow neg = diff;
    for (double& x : neg.vals) x = -x;
    lp.AddLessEqual(SparseRow(diff).Add(v.t_du, -1.0), c,
                    RowKey(RowKind::kInputDiff, j, 0, 0));
    lp.AddLessEqual(SparseRow(neg).Add(v.t_du, -1.0), -c,
                    RowKey(RowKind::kInputDiff, j, 0, 1));
    lp.AddLessEqual(diff, c + set.delta_step_max,
                    RowKey(RowKind::kRate, j, 0, 0));
    lp.AddLessEqual(neg, -c + set.delta_step_max,
                    RowKey(RowKind::kRate, j, 0, 1));
  }

  // Terminal pose.
  lp.AddLessEqual(
      SparseRow().Add(v.e_psi(N), 1.0).Add(v.sigma_epsi_N, -1.0), end.e_psi,
      RowKey(RowKind::kTerminal, 0, 0, 0));
  lp.AddLessEqual(
      SparseRow().Add(v.e_psi(N), -1.0).Add(v.sigma_epsi_N, -1.0), -end.e_psi,
      RowKey(RowKind::kTerminal, 0, 0, 1));
  lp.AddLessEqual(SparseRow().Add(v.e_y(N), 1.0).Add(v.sigma_ey_N, -1.0),
                  end.e_y, RowKey(RowKind::kTerminal, 1, 0, 0));
  lp.AddLessEqual(SparseRow().Add(v.e_y(N), -1.0).Add(v.sigma_ey_N, -1.0),
                  -end.e_y, RowKey(RowKind::kTerminal, 1, 0, 1));

  // Corridor for the reference point.
  for (std::size_t j = 1; j <= N; ++j) {
    const double s = grid.stations[j];
    lp.AddLessEqual(SparseRow().Add(v.e_y(j), 1.0).Add(v.sigma, -1.0),
                    corridor.UpperAt(s), RowKey(RowKind::kCorridor, j, 0, 0));
    lp.AddLessEqual(SparseRow().Add(v.e_y(j), -1.0).Add(v.sigma, -1.0),
                    -corridor.LowerAt(s), RowKey(RowKind::kCorridor, j, 0, 1));
  }

  // Footprint: Q_lower z_j + sigma >= q_lower, Q_upper z_j - sigma <= q_upper.
  for (const FootprintConstraintBlock& blk : blocks) {
    const std::size_t j = blk.station;
    if (j < 1 || j > N) {
      throw Error(ErrorKind::kDimensionMismatch,
                  "footprint block at station " + std::to_string(j));
    }
    for (Eigen::Index r = 0; r < blk.Q_lower.rows(); ++r) {
      SparseRow row;
      row.Add(v.e_psi(j), -blk.Q_lower(r, 0))
          .Add(v.e_y(j), -blk.Q_lower(r, 1))
          .Add(v.sigma, -1.0);
      lp.AddLessEqual(std::move(row), -blk.q_lower(r),
                      RowKey(RowKind::kFootprintLower, j,
                             blk.lower_stations[static_cast<std::size_t>(r)]));
    }
    for (Eigen::Index r = 0; r < blk.Q_upper.rows(); ++r) {
      SparseRow row;
      row.Add(v.e_psi(j), blk.Q_upper(r, 0))
          .Add(v.e_y(j), blk.Q_upper(r, 1))
          .Add(v.sigma, -1.0);
      lp.AddLessEqual(std::move(row), blk.q_upper(r),
                      RowKey(RowKind::kFootprintUpper, j,
                             blk.upper_stations[static_cast<std::size_t>(r)]));
    }
  }
  return out;
}

// Heading rows pinning e_psi_j to the obstacle heading over each obstacle's
// s-extent, softened by sigma_epsi_N. Returns the station index set per
// obstacle.
inline std::vector<std::vector<std::size_t>> AddParallelOvertake(
    AssembledLp& alp, std::span<const ObstacleEnvelope> envelopes,
    const Grid& grid) {
  std::vector<std::vector<std::size_t>> sets;
  const VariableMap& v = alp.vars;
  for (std::size_t l = 0; l < envelopes.size(); ++l) {
    const ObstacleEnvelope& env = envelopes[l];
    std::vector<std::size_t> J;
    for (std::size_t j = 0; j < grid.stations.size(); ++j) {
      const double s = grid.stations[j];
      if (s < env.s_begin || s > env.s_end) continue;
      J.push_back(j);
      alp.lp.AddLessEqual(
          SparseRow().Add(v.e_psi(j), 1.0).Add(v.sigma_epsi_N, -1.0),
          env.heading, RowKey(RowKind::kParallel, l, j, 0));
      alp.lp.AddLessEqual(
          SparseRow().Add(v.e_psi(j), -1.0).Add(v.sigma_epsi_N, -1.0),
          -env.heading, RowKey(RowKind::kParallel, l, j, 1));
    }
    sets.push_back(std::move(J));
  }
  return sets;
}

struct LpIterate {
  std::vector<SpatialState> states;
  std::vector<double> inputs;
  double t_u = 0.0;
  double t_du = 0.0;
  double sigma = 0.0;
  double sigma_epsi_N = 0.0;
  double sigma_ey_N = 0.0;
  double objective = 0.0;

  double MaxSlack() const {
    return std::max({sigma, sigma_epsi_N, sigma_ey_N});
  }
};

inline LpIterate ExtractIterate(const VariableMap& v,
                                const std::vector<double>& x,
                                double objective) {
  LpIterate it;
  const auto at = [&](int i) { return x[static_cast<std::size_t>(i)]; };
  for (std::size_t j = 0; j <= v.N; ++j) {
    it.states.push_back({at(v.e_psi(j)), at(v.e_y(j))});
  }
  for (std::size_t j = 0; j < v.N; ++j) it.inputs.push_back(at(v.u(j)));
  it.t_u = at(v.t_u);
  it.t_du = at(v.t_du);
  it.sigma = at(v.sigma);
  it.sigma_epsi_N = at(v.sigma_epsi_N);
  it.sigma_ey_N = at(v.sigma_ey_N);
  it.objective = objective;
  return it;
}

}  // namespace slpplan

#endif  // SLPPLAN_LP_ASSEMBLY_HPP_
