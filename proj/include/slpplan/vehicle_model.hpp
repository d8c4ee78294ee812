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

// Kinematic bicycle model in the spatial (road-aligned) domain.
//
// With the arc length s of the centerline as independent variable and the
// rear axle as reference point, the state z = (e_psi, e_y) evolves as
//
//   e_psi' = (1 - kappa_s e_y) tan(delta) / (l cos e_psi) - kappa_s
//   e_y'   = (1 - kappa_s e_y) tan(e_psi)
//
// which is the usual rho_s-form rewritten with kappa_s = 1 / rho_s so that
// straight roads need no special case.

#ifndef SLPPLAN_VEHICLE_MODEL_HPP_
#define SLPPLAN_VEHICLE_MODEL_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "slpplan/error.hpp"
#include "slpplan/frenet_frame.hpp"

namespace slpplan {

inline constexpr double kDegToRad = std::numbers::pi / 180.0;

// Heading errors at or beyond this magnitude are treated as singular.
inline constexpr double kMaxHeadingError = 89.0 * kDegToRad;

struct VehicleParams {
  double a = 1.0;                     // CoG to rear [m]
  double b = 3.0;                     // CoG to front [m]
  double w = 0.9;                     // half width [m]
  double l = 2.7;                     // wheelbase [m]
  double delta_max = 40.0 * kDegToRad;
  double delta_rate_max = 0.5;        // [rad/s]
  double mu = 0.8;

  void Validate() const {
    auto fail = [](const std::string& what) {
      throw Error(ErrorKind::kInvalidInput, "vehicle: " + what);
    };
    if (!(a > 0) || !(b > 0) || !(w > 0) || !(l > 0)) {
      fail("a, b, w and l must be positive");
    }
    if (!(delta_max > 0) || !(delta_max < std::numbers::pi / 2)) {
      fail("delta_max must lie in (0, pi/2)");
    }
    if (!(delta_rate_max > 0)) fail("delta_rate_max must be positive");
    if (!(mu > 0) || !(mu <= 1.5)) fail("mu must lie in (0, 1.5]");
  }
};

struct SpatialState {
  double e_psi = 0.0;
  double e_y = 0.0;

  Eigen::Vector2d vec() const { return {e_psi, e_y}; }
  static SpatialState From(const Eigen::Vector2d& v) { return {v(0), v(1)}; }
};

namespace detail {

inline void CheckAdmissible(double e_psi, double e_y, double kappa_s,
                            const char* where) {
  if (!(std::abs(e_psi) < kMaxHeadingError)) {
    throw Error(ErrorKind::kSingularState,
                std::string(where) + ": |e_psi| = " +
                    std::to_string(std::abs(e_psi) / kDegToRad) +
                    " deg reaches the forward-motion limit");
  }
  if (!(1.0 - kappa_s * e_y > 0.0)) {
    throw Error(ErrorKind::kSingularState,
                std::string(where) + ": e_y beyond the curvature radius");
  }
}

}  // namespace detail

// Right-hand side dz/ds.
inline Eigen::Vector2d SpatialDynamics(const SpatialState& z, double delta,
                                       double kappa_s,
                                       const VehicleParams& p) {
  detail::CheckAdmissible(z.e_psi, z.e_y, kappa_s, "spatial dynamics");
  const double scale = 1.0 - kappa_s * z.e_y;
  return {scale * std::tan(delta) / (p.l * std::cos(z.e_psi)) - kappa_s,
          scale * std::tan(z.e_psi)};
}

// Verbatim rho_s-form, valid for finite radius only. Kept to cross-check the
// curvature form.
inline Eigen::Vector2d SpatialDynamicsRadiusForm(const SpatialState& z,
                                                 double delta, double rho_s,
                                                 const VehicleParams& p) {
  return {(rho_s - z.e_y) * std::tan(delta) /
                  (rho_s * p.l * std::cos(z.e_psi)) -
              1.0 / rho_s,
          (rho_s - z.e_y) / rho_s * std::tan(z.e_psi)};
}

struct Linearization {
  Eigen::Matrix2d A;  // df/dz
  Eigen::Vector2d B;  // df/ddelta
  Eigen::Vector2d r;  // f(z_ref, u_ref)
};

inline Linearization Jacobians(const SpatialState& z, double delta,
                               double kappa_s, const VehicleParams& p) {
  detail::CheckAdmissible(z.e_psi, z.e_y, kappa_s, "jacobians");
  if (!(std::abs(delta) < std::numbers::pi / 2)) {
    throw Error(ErrorKind::kSingularState, "jacobians: |delta| >= pi/2");
  }
  const double scale = 1.0 - kappa_s * z.e_y;
  const double c = std::cos(z.e_psi);
  const double s = std::sin(z.e_psi);
  const double td = std::tan(delta);
  const double cd = std::cos(delta);

  Linearization lin;
  lin.A(0, 0) = scale * td * s / (p.l * c * c);
  lin.A(0, 1) = -kappa_s * td / (p.l * c);
  lin.A(1, 0) = scale / (c * c);
  lin.A(1, 1) = -kappa_s * std::tan(z.e_psi);
  lin.B(0) = scale / (p.l * c * cd * cd);
  lin.B(1) = 0.0;
  lin.r(0) = scale * td / (p.l * c) - kappa_s;
  lin.r(1) = scale * std::tan(z.e_psi);
  return lin;
}

struct Grid {
  std::vector<double> stations;

  // Number of intervals.
  std::size_t N() const { return stations.size() - 1; }
  double Step(std::size_t j) const { return stations[j + 1] - stations[j]; }
  double MeanStep() const {
    return (stations.back() - stations.front()) / static_cast<double>(N());
  }
};

// Uniform grid of N intervals over [s_t, s_t + S], refined with every envelope
// corner s-coordinate that falls strictly inside.
inline Grid BuildGrid(double s_t, double S, std::size_t N,
                      std::span<const ObstacleEnvelope> envelopes) {
  if (!(S > 0.0) || N < 2) {
    throw Error(ErrorKind::kInvalidInput, "grid needs S > 0 and N >= 2");
  }
  constexpr double kDedupTol = 1e-9;
  std::vector<double> st;
  st.reserve(N + 1 + 2 * envelopes.size());
  for (std::size_t j = 0; j <= N; ++j) {
    st.push_back(j == N ? s_t + S
                        : s_t + S * static_cast<double>(j) /
                                    static_cast<double>(N));
  }
  for (const auto& env : envelopes) {
    for (double c : {env.s_begin, env.s_end}) {
      if (c > s_t + kDedupTol && c < s_t + S - kDedupTol) st.push_back(c);
    }
  }
  std::sort(st.begin(), st.end());
  Grid grid;
  for (double s : st) {
    if (grid.stations.empty() || s - grid.stations.back() > kDedupTol) {
      grid.stations.push_back(s);
    }
  }
  return grid;
}

struct LinearizedStage {
  Eigen::Matrix2d A;
  Eigen::Vector2d B;
  Eigen::Vector2d g;
  double s = 0.0;
  double ds = 0.0;
};

// Forward-Euler discretization of the linearization about the reference:
// A_j = I + ds A_c, B_j = ds B_c, g_j = ds (r_c - A_c z_ref - B_c u_ref).
inline LinearizedStage DiscretizeStage(const SpatialState& z_ref, double u_ref,
                                       double kappa_s, double s, double ds,
                                       const VehicleParams& p) {
  const Linearization lin = Jacobians(z_ref, u_ref, kappa_s, p);
  LinearizedStage st;
  st.A = Eigen::Matrix2d::Identity() + ds * lin.A;
  st.B = ds * lin.B;
  st.g = ds * (lin.r - lin.A * z_ref.vec() - lin.B * u_ref);
  st.s = s;
  st.ds = ds;
  return st;
}

inline std::vector<LinearizedStage> LinearizeDiscretize(
    const Grid& grid, std::span<const SpatialState> z_refs,
    std::span<const double> u_refs, const RoadCenterline& cl,
    const VehicleParams& p) {
  const std::size_t n = grid.N();
  if (z_refs.size() != n + 1 || u_refs.size() != n) {
    throw Error(ErrorKind::kDimensionMismatch,
                "reference needs N+1 states and N inputs");
  }
  std::vector<LinearizedStage> stages;
  stages.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double s = grid.stations[j];
    try {
      stages.push_back(DiscretizeStage(z_refs[j], u_refs[j], cl.Curvature(s),
                                       s, grid.Step(j), p));
    } catch (const Error& e) {
      throw Error(e.kind(), "station " + std::to_string(j) + ": " + e.what());
    }
  }
  return stages;
}

// Integrates the nonlinear spatial dynamics over the grid with fixed-step
// RK4 and zero-order-hold inputs. Road curvature is sampled continuously.
inline std::vector<SpatialState> SimulateNonlinear(
    const SpatialState& z0, std::span<const double> inputs, const Grid& grid,
    const RoadCenterline& cl, const VehicleParams& p, int substeps = 8) {
  if (inputs.size() != grid.N()) {
    throw Error(ErrorKind::kDimensionMismatch, "simulation needs N inputs");
  }
  substeps = std::max(substeps, 8);
  std::vector<SpatialState> out;
  out.reserve(grid.stations.size());
  out.push_back(z0);
  Eigen::Vector2d z = z0.vec();
  for (std::size_t j = 0; j < grid.N(); ++j) {
    const double h = grid.Step(j) / substeps;
    const double u = inputs[j];
    double s = grid.stations[j];
    auto f = [&](double ss, const Eigen::Vector2d& zz) {
      return SpatialDynamics(SpatialState::From(zz), u, cl.Curvature(ss), p);
    };
    try {
      for (int k = 0; k < substeps; ++k) {
        const Eigen::Vector2d k1 = f(s, z);
        const Eigen::Vector2d k2 = f(s + 0.5 * h, z + 0.5 * h * k1);
        const Eigen::Vector2d k3 = f(s + 0.5 * h, z + 0.5 * h * k2);
        const Eigen::Vector2d k4 = f(s + h, z + h * k3);
        z += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        s += h;
      }
    } catch (const Error& e) {
      throw Error(e.kind(),
                  "simulation interval " + std::to_string(j) + ": " + e.what());
    }
    out.push_back(SpatialState::From(z));
  }
  return out;
}

}  // namespace slpplan

#endif  // SLPPLAN_VEHICLE_MODEL_HPP_
