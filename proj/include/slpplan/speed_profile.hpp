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

// Traveled path length, path curvature and the friction-limited speed bound.

#ifndef SLPPLAN_SPEED_PROFILE_HPP_
#define SLPPLAN_SPEED_PROFILE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "slpplan/error.hpp"
#include "slpplan/frenet_frame.hpp"
#include "slpplan/vehicle_model.hpp"

namespace slpplan {

inline constexpr double kGravity = 9.81;
inline constexpr double kDefaultSpeedCap = 130.0 / 3.6;
// Curvatures below this magnitude count as straight.
inline constexpr double kStraightCurvature = 1e-6;

// eta_j with eta_0 = 0 by trapezoidal integration of
// d eta / ds = (1 - kappa_s e_y) / cos(e_psi).
inline std::vector<double> PathLength(std::span<const SpatialState> states,
                                      const Grid& grid,
                                      const RoadCenterline& cl) {
  if (states.size() != grid.stations.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "path length needs N+1 states");
  }
  auto rate = [&](std::size_t j) {
    const SpatialState& z = states[j];
    const double kappa = cl.Curvature(grid.stations[j]);
    detail::CheckAdmissible(z.e_psi, z.e_y, kappa, "path length");
    return (1.0 - kappa * z.e_y) / std::cos(z.e_psi);
  };
  std::vector<double> eta(states.size(), 0.0);
  double prev = rate(0);
  for (std::size_t j = 1; j < states.size(); ++j) {
    const double cur = rate(j);
    eta[j] = eta[j - 1] + 0.5 * (prev + cur) * grid.Step(j - 1);
    prev = cur;
  }
  return eta;
}

// kappa = tan(delta) / l under the kinematic model.
inline std::vector<double> CurvatureAlongPath(std::span<const double> inputs,
                                              const VehicleParams& p) {
  std::vector<double> kappa;
  kappa.reserve(inputs.size());
  for (double d : inputs) kappa.push_back(std::tan(d) / p.l);
  return kappa;
}

inline double VmaxFric(double kappa, double mu,
                       double v_cap = kDefaultSpeedCap) {
  if (std::abs(kappa) < kStraightCurvature) return v_cap;
  return std::min(v_cap, std::sqrt(mu * kGravity / std::abs(kappa)));
}

inline std::vector<double> VmaxFric(std::span<const double> kappa, double mu,
                                    double v_cap = kDefaultSpeedCap) {
  if (!(mu > 0)) throw Error(ErrorKind::kInvalidInput, "mu must be positive");
  std::vector<double> v;
  v.reserve(kappa.size());
  for (double k : kappa) v.push_back(VmaxFric(k, mu, v_cap));
  return v;
}

struct SpeedProfile {
  std::vector<double> eta;
  std::vector<double> kappa;
  std::vector<double> v_max;
  double v_min = std::numeric_limits<double>::infinity();
  double eta_at_min = 0.0;
};

inline SpeedProfile MakeSpeedProfile(std::vector<double> eta,
                                     std::vector<double> kappa, double mu,
                                     double v_cap) {
  SpeedProfile sp;
  sp.v_max = VmaxFric(kappa, mu, v_cap);
  for (std::size_t i = 0; i < sp.v_max.size(); ++i) {
    if (sp.v_max[i] < sp.v_min) {
      sp.v_min = sp.v_max[i];
      sp.eta_at_min = i < eta.size() ? eta[i] : 0.0;
    }
  }
  sp.eta = std::move(eta);
  sp.kappa = std::move(kappa);
  return sp;
}

}  // namespace slpplan

#endif  // SLPPLAN_SPEED_PROFILE_HPP_
