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

// Vehicle footprint geometry and its linearized corridor constraints.
//
// The vehicle is a rectangle extending a behind and b ahead of the reference
// point, w to either side. At station s_j its right and left sides are the
// lines through the rear corners c3 and c2 with slope tan(e_psi); these lines
// are linearized in (e_psi_j, e_y_j) about the reference and evaluated at the
// grid stations the vehicle covers.

#ifndef SLPPLAN_FOOTPRINT_HPP_
#define SLPPLAN_FOOTPRINT_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "slpplan/frenet_frame.hpp"
#include "slpplan/vehicle_model.hpp"

namespace slpplan {

// Corner order: c1 front-left, c2 rear-left, c3 rear-right, c4 front-right.
struct CornerOffsets {
  std::array<double, 4> xi_s;
  std::array<double, 4> xi_ey;
  std::array<double, 4> zeta_s;
  std::array<double, 4> zeta_ey;

  static CornerOffsets From(const VehicleParams& p) {
    return {{p.b, -p.a, -p.a, p.b},
            {p.b, -p.a, -p.a, p.b},
            {-p.w, -p.w, p.w, p.w},
            {p.w, p.w, -p.w, -p.w}};
  }
};

using Corners = std::array<FrenetPoint, 4>;

inline Corners CornerPositions(double s, const SpatialState& z,
                               const VehicleParams& p) {
  const CornerOffsets off = CornerOffsets::From(p);
  const double c = std::cos(z.e_psi);
  const double sn = std::sin(z.e_psi);
  Corners out;
  for (std::size_t i = 0; i < 4; ++i) {
    out[i].s = s + off.xi_s[i] * c + off.zeta_s[i] * sn;
    out[i].e_y = z.e_y + off.xi_ey[i] * sn + off.zeta_ey[i] * c;
  }
  return out;
}

// e_y(s) = slope * (s - anchor_s) + anchor_e_y
struct BoundaryLine {
  double slope = 0.0;
  double anchor_s = 0.0;
  double anchor_e_y = 0.0;

  double operator()(double s) const {
    return slope * (s - anchor_s) + anchor_e_y;
  }
};

struct BoundaryLines {
  BoundaryLine lower;
  BoundaryLine upper;
};

inline BoundaryLines ComputeBoundaryLines(double s_j, const SpatialState& z,
                                          const VehicleParams& p) {
  const Corners c = CornerPositions(s_j, z, p);
  const double slope = std::tan(z.e_psi);
  return {{slope, c[2].s, c[2].e_y}, {slope, c[1].s, c[1].e_y}};
}

// Grid indices whose stations lie under the vehicle at station j (interior
// stations only), widened by one neighbour on each side and clipped to [0, N].
inline std::vector<std::size_t> CoverageSet(std::size_t j,
                                            const SpatialState& z_ref,
                                            const Grid& grid,
                                            const VehicleParams& p) {
  const std::size_t n = grid.N();
  const double s_j = grid.stations[j];
  const Corners c = CornerPositions(s_j, z_ref, p);
  const double back = std::min(c[1].s, c[2].s);
  const double front = std::max(c[0].s, c[3].s);
  constexpr double kTol = 1e-9;

  std::size_t first = n;
  std::size_t last = 0;
  for (std::size_t k = 1; k + 1 <= n; ++k) {
    const double s = grid.stations[k];
    if (s >= back - kTol && s <= front + kTol) {
      first = std::min(first, k);
      last = std::max(last, k);
    }
  }
  std::vector<std::size_t> out;
  if (first > last) {
    // No interior station under the vehicle; keep the two stations
    // bracketing s_j.
    first = last = std::min(std::max<std::size_t>(j, 1), n - 1);
  }
  const std::size_t lo = first == 0 ? 0 : first - 1;
  const std::size_t hi = std::min(last + 1, n);
  for (std::size_t k = lo; k <= hi; ++k) out.push_back(k);
  return out;
}

struct FootprintConstraintBlock {
  std::size_t station = 0;
  std::vector<std::size_t> covered;  // S_j

  // Q_lower z_j >= q_lower, one row per entry of lower_stations.
  std::vector<std::size_t> lower_stations;
  Eigen::MatrixX2d Q_lower;
  Eigen::VectorXd q_lower;

  // Q_upper z_j <= q_upper, one row per entry of upper_stations.
  std::vector<std::size_t> upper_stations;
  Eigen::MatrixX2d Q_upper;
  Eigen::VectorXd q_upper;
};

// Coefficients of the first-order expansion of a side line about the
// reference, evaluated at station s: e_y,line(s) ~ g * e_psi + e_y + h.
struct SideExpansion {
  double g = 0.0;
  double h = 0.0;
};

// side = -1 for the right (lower) line, +1 for the left (upper) line. Both
// lines reduce to e_y + tan(e_psi)(s - s_j) + side * w / cos(e_psi).
inline SideExpansion ExpandSide(double s, double s_j, double e_psi_ref,
                                double side, const VehicleParams& p) {
  const double c = std::cos(e_psi_ref);
  const double sn = std::sin(e_psi_ref);
  const double d = s - s_j;
  SideExpansion ex;
  ex.g = (d + side * p.w * sn) / (c * c);
  ex.h = std::tan(e_psi_ref) * d + side * p.w / c - ex.g * e_psi_ref;
  return ex;
}

inline FootprintConstraintBlock LinearizedBlock(std::size_t j,
                                                const SpatialState& z_ref,
                                                const Grid& grid,
                                                const Corridor& corridor,
                                                const VehicleParams& p) {
  FootprintConstraintBlock blk;
  blk.station = j;
  blk.covered = CoverageSet(j, z_ref, grid, p);
  blk.lower_stations = blk.covered;
  blk.upper_stations = blk.covered;
  const auto rows = static_cast<Eigen::Index>(blk.covered.size());
  blk.Q_lower.resize(rows, 2);
  blk.q_lower.resize(rows);
  blk.Q_upper.resize(rows, 2);
  blk.q_upper.resize(rows);
  const double s_j = grid.stations[j];
  for (Eigen::Index r = 0; r < rows; ++r) {
    const double s = grid.stations[blk.covered[static_cast<std::size_t>(r)]];
    const SideExpansion lo = ExpandSide(s, s_j, z_ref.e_psi, -1.0, p);
    const SideExpansion up = ExpandSide(s, s_j, z_ref.e_psi, +1.0, p);
    blk.Q_lower(r, 0) = lo.g;
    blk.Q_lower(r, 1) = 1.0;
    blk.q_lower(r) = corridor.LowerAt(s) - lo.h;
    blk.Q_upper(r, 0) = up.g;
    blk.Q_upper(r, 1) = 1.0;
    blk.q_upper(r) = corridor.UpperAt(s) - up.h;
  }
  return blk;
}

// Drops rows implied by others. Every row is affine in its station s_k, so
// within a run of consecutive covered stations sharing the same corridor
// bound only the first and last rows can be active. The pruned block has
// exactly the same feasible set.
inline FootprintConstraintBlock PruneDominatedRows(
    const FootprintConstraintBlock& blk, const Grid& grid,
    const Corridor& corridor) {
  auto prune = [&](const std::vector<std::size_t>& stations,
                   const Eigen::MatrixX2d& Q, const Eigen::VectorXd& q,
                   bool lower, std::vector<std::size_t>& out_st,
                   Eigen::MatrixX2d& out_Q, Eigen::VectorXd& out_q) {
    const std::size_t n = stations.size();
    std::vector<std::size_t> keep;
    auto bound = [&](std::size_t i) {
      const double s = grid.stations[stations[i]];
      return lower ? corridor.LowerAt(s) : corridor.UpperAt(s);
    };
    for (std::size_t i = 0; i < n; ++i) {
      const bool run_start = i == 0 || bound(i) != bound(i - 1);
      const bool run_end = i + 1 == n || bound(i) != bound(i + 1);
      if (run_start || run_end) keep.push_back(i);
    }
    out_st.clear();
    out_Q.resize(static_cast<Eigen::Index>(keep.size()), 2);
    out_q.resize(static_cast<Eigen::Index>(keep.size()));
    for (std::size_t r = 0; r < keep.size(); ++r) {
      const auto src = static_cast<Eigen::Index>(keep[r]);
      const auto dst = static_cast<Eigen::Index>(r);
      out_st.push_back(stations[keep[r]]);
      out_Q.row(dst) = Q.row(src);
      out_q(dst) = q(src);
    }
  };
  FootprintConstraintBlock out;
  out.station = blk.station;
  out.covered = blk.covered;
  prune(blk.lower_stations, blk.Q_lower, blk.q_lower, true, out.lower_stations,
        out.Q_lower, out.q_lower);
  prune(blk.upper_stations, blk.Q_upper, blk.q_upper, false,
        out.upper_stations, out.Q_upper, out.q_upper);
  return out;
}

}  // namespace slpplan

#endif  // SLPPLAN_FOOTPRINT_HPP_
