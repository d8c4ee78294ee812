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

// Clothoid path planning baseline: waypoints at the safety-inflated obstacle
// corners on the passing side, joined by straights and symmetric four-piece
// clothoid lane changes, with steering reconstructed from path curvature.

#ifndef SLPPLAN_CLOTHOID_HPP_
#define SLPPLAN_CLOTHOID_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "slpplan/error.hpp"
#include "slpplan/frenet_frame.hpp"
#include "slpplan/vehicle_model.hpp"

namespace slpplan {

struct FresnelCS {
  double C = 0.0;
  double S = 0.0;
};

// C(t) = int_0^t cos(pi u^2 / 2) du, S(t) = int_0^t sin(pi u^2 / 2) du.
// Power series below t = 1.5, continued fraction for the complementary
// error function above.
inline FresnelCS Fresnel(double t) {
  constexpr double kPi = std::numbers::pi;
  constexpr double kEps = 1e-16;
  constexpr int kMaxIter = 200;
  const double ax = std::abs(t);
  FresnelCS out;
  if (ax < 1e-150) {
    out.C = ax;
  } else if (ax <= 1.5) {
    // Alternating terms of the combined series for C and S.
    double sum = 0.0;
    double sum_s = 0.0;
    double sum_c = ax;
    double sign = 1.0;
    const double fact = 0.5 * kPi * ax * ax;
    bool odd = true;
    double term = ax;
    int n = 3;
    for (int k = 1; k <= kMaxIter; ++k) {
      term *= fact / k;
      sum += sign * term / n;
      const double test = std::abs(sum) * kEps;
      if (odd) {
        sign = -sign;
        sum_s = sum;
        sum = sum_c;
      } else {
        sum_c = sum;
        sum = sum_s;
      }
      if (term < test) break;
      odd = !odd;
      n += 2;
    }
    out.C = sum_c;
    out.S = sum_s;
  } else {
    using cd = std::complex<double>;
    const double pix2 = kPi * ax * ax;
    cd b(1.0, -pix2);
    cd cc(1e300, 0.0);
    cd d = 1.0 / b;
    cd h = d;
    int n = -1;
    for (int k = 2; k <= kMaxIter; ++k) {
      n += 2;
      const double a = -static_cast<double>(n * (n + 1));
      b += 4.0;
      d = 1.0 / (a * d + b);
      cc = b + a / cc;
      const cd del = cc * d;
      h *= del;
      if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < kEps) break;
    }
    h *= cd(ax, -ax);
    const cd cs =
        cd(0.5, 0.5) * (1.0 - cd(std::cos(0.5 * pix2), std::sin(0.5 * pix2)) * h);
    out.C = cs.real();
    out.S = cs.imag();
  }
  if (t < 0) {
    out.C = -out.C;
    out.S = -out.S;
  }
  return out;
}

struct Pose2 {
  double x = 0.0;
  double y = 0.0;
  double psi = 0.0;
};

// kappa(eta) = kappa0 + sharpness * eta on [0, length]. A zero sharpness
// gives an arc or, with zero kappa0, a straight.
struct ClothoidSegment {
  Pose2 start;
  double kappa0 = 0.0;
  double sharpness = 0.0;
  double length = 0.0;

  double Kappa(double eta) const { return kappa0 + sharpness * eta; }
  double Heading(double eta) const {
    return start.psi + kappa0 * eta + 0.5 * sharpness * eta * eta;
  }

  Pose2 At(double eta) const {
    Pose2 p;
    p.psi = Heading(eta);
    const double c = sharpness;
    if (std::abs(c) < 1e-12) {
      if (std::abs(kappa0) < 1e-12) {
        p.x = start.x + eta * std::cos(start.psi);
        p.y = start.y + eta * std::sin(start.psi);
      } else {
        p.x = start.x + (std::sin(p.psi) - std::sin(start.psi)) / kappa0;
        p.y = start.y - (std::cos(p.psi) - std::cos(start.psi)) / kappa0;
      }
      return p;
    }
    // Complete the square: psi(t) = A + (c/2)(t + b)^2.
    const double b = kappa0 / c;
    const double A = start.psi - 0.5 * kappa0 * kappa0 / c;
    const double k = std::sqrt(std::numbers::pi / std::abs(c));
    const double scale = std::sqrt(std::abs(c) / std::numbers::pi);
    const FresnelCS f0 = Fresnel(b * scale);
    const FresnelCS f1 = Fresnel((eta + b) * scale);
    const double dC = f1.C - f0.C;
    const double dS = f1.S - f0.S;
    const double ca = std::cos(A);
    const double sa = std::sin(A);
    if (c > 0) {
      p.x = start.x + k * (ca * dC - sa * dS);
      p.y = start.y + k * (sa * dC + ca * dS);
    } else {
      p.x = start.x + k * (ca * dC + sa * dS);
      p.y = start.y + k * (sa * dC - ca * dS);
    }
    return p;
  }

  Pose2 End() const { return At(length); }
};

struct PathSample {
  double eta = 0.0;
  double x = 0.0;
  double y = 0.0;
  double psi = 0.0;
  double kappa = 0.0;
};

struct PrimitivePath {
  std::vector<ClothoidSegment> segments;

  double Length() const {
    double L = 0.0;
    for (const auto& s : segments) L += s.length;
    return L;
  }

  // Appends a segment starting at the current end pose.
  void Append(double kappa0, double sharpness, double length) {
    ClothoidSegment seg;
    seg.start = segments.empty() ? start : segments.back().End();
    seg.kappa0 = kappa0;
    seg.sharpness = sharpness;
    seg.length = length;
    segments.push_back(seg);
  }

  // Samples at uniform eta steps (the last step may be shorter).
  std::vector<PathSample> Sample(double step) const {
    std::vector<PathSample> out;
    const double total = Length();
    const auto n = static_cast<std::size_t>(std::ceil(total / step - 1e-9));
    std::size_t seg = 0;
    double seg_begin = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      const double eta = std::min(total, static_cast<double>(i) * step);
      while (seg + 1 < segments.size() &&
             eta > seg_begin + segments[seg].length) {
        seg_begin += segments[seg].length;
        ++seg;
      }
      const ClothoidSegment& sg = segments[seg];
      const double local = std::clamp(eta - seg_begin, 0.0, sg.length);
      const Pose2 p = sg.At(local);
      out.push_back({eta, p.x, p.y, p.psi, sg.Kappa(local)});
    }
    return out;
  }

  Pose2 start;
};

struct LaneChangeShape {
  double theta = 0.0;      // peak heading
  double piece = 0.0;      // length of each of the four clothoids
  double sharpness = 0.0;  // |dkappa/deta|
  double kappa_peak = 0.0;
};

// Four clothoids with curvature 0 -> k -> 0 -> -k -> 0 moving the pose by
// (dx, dy) with zero heading and curvature at both ends. Each half turns the
// heading by theta and its chord points along theta / 2, so the full chord
// fixes theta = 2 atan(dy / dx).
inline LaneChangeShape SolveLaneChange(double dx, double dy) {
  if (!(dx > 0)) {
    throw Error(ErrorKind::kCppInfeasible, "lane change needs forward travel");
  }
  LaneChangeShape sh;
  const double d = std::abs(dy);
  const double theta = 2.0 * std::atan(d / dx);
  if (theta >= kMaxHeadingError) {
    throw Error(ErrorKind::kCppInfeasible,
                "lane change of " + std::to_string(dy) + " m over " +
                    std::to_string(dx) + " m needs heading beyond 89 deg");
  }
  if (theta == 0.0) return sh;
  // End point of the first clothoid per unit piece length.
  const double u = std::sqrt(theta / std::numbers::pi);
  const FresnelCS f = Fresnel(u);
  const double k = std::sqrt(std::numbers::pi / theta);
  const double px = k * f.C;
  const double py = k * f.S;
  const double proj = px * std::cos(0.5 * theta) + py * std::sin(0.5 * theta);
  sh.piece = dx / (4.0 * proj * std::cos(0.5 * theta));
  sh.theta = dy < 0 ? -theta : theta;
  sh.sharpness = theta / (sh.piece * sh.piece);
  sh.kappa_peak = theta / sh.piece;
  return sh;
}

struct CppSettings {
  double safety_margin = 1.1;
  double sharpness_cap = 50.0;  // [1/m^2]
  double sample_step = 0.05;    // [m]
};

struct CppWaypoint {
  double s = 0.0;
  double e_y = 0.0;
  bool merged = false;
};

// Start, the inflated corners on the passing side of every obstacle (in s
// order), end. Overlapping corner pairs of neighbouring obstacles collapse to
// their midpoint.
inline std::vector<CppWaypoint> CppWaypoints(
    std::span<const ObstacleEnvelope> envelopes,
    std::span<const PassSide> sides, double s_start, double e_start,
    double s_end, double e_end, double margin) {
  std::vector<std::size_t> order(envelopes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return envelopes[a].s_begin < envelopes[b].s_begin;
  });
  std::vector<CppWaypoint> wp;
  wp.push_back({s_start, e_start, false});
  for (std::size_t i : order) {
    const ObstacleEnvelope env = envelopes[i].Inflated(margin);
    const double e = sides[i] == PassSide::kLeft ? env.e_y_high : env.e_y_low;
    CppWaypoint first{std::max(env.s_begin, s_start), e, false};
    CppWaypoint last{std::min(env.s_end, s_end), e, false};
    if (wp.size() > 1 && first.s < wp.back().s) {
      CppWaypoint& prev = wp.back();
      const double mid = 0.5 * (prev.s + first.s);
      prev = {mid, 0.5 * (prev.e_y + first.e_y), true};
    } else {
      wp.push_back(first);
    }
    wp.push_back(last);
  }
  wp.push_back({s_end, e_end, false});
  for (std::size_t i = 1; i < wp.size(); ++i) {
    if (!(wp[i].s >= wp[i - 1].s)) {
      throw Error(ErrorKind::kCppInfeasible, "waypoints are not s-monotone");
    }
  }
  return wp;
}

// Straights between equal offsets, lane changes between different ones, all
// in the (s, e_y) plane starting at (s_0, e_0) with zero heading.
inline PrimitivePath FitPrimitivePath(std::span<const CppWaypoint> wp,
                                      const CppSettings& set) {
  PrimitivePath path;
  path.start = {wp.front().s, wp.front().e_y, 0.0};
  for (std::size_t i = 1; i < wp.size(); ++i) {
    const double dx = wp[i].s - wp[i - 1].s;
    const double dy = wp[i].e_y - wp[i - 1].e_y;
    if (dx <= 1e-12) {
      if (std::abs(dy) > 1e-9) {
        throw Error(ErrorKind::kCppInfeasible,
                    "lateral step without longitudinal room at s=" +
                        std::to_string(wp[i].s));
      }
      continue;
    }
    if (std::abs(dy) <= 1e-12) {
      path.Append(0.0, 0.0, dx);
      continue;
    }
    const LaneChangeShape sh = SolveLaneChange(dx, dy);
    if (sh.sharpness > set.sharpness_cap) {
      throw Error(ErrorKind::kCppInfeasible,
                  "lane change sharpness " + std::to_string(sh.sharpness) +
                      " exceeds the cap " + std::to_string(set.sharpness_cap));
    }
    const double c = dy > 0 ? sh.sharpness : -sh.sharpness;
    const double k = dy > 0 ? sh.kappa_peak : -sh.kappa_peak;
    path.Append(0.0, c, sh.piece);
    path.Append(k, -c, sh.piece);
    path.Append(0.0, -c, sh.piece);
    path.Append(-k, c, sh.piece);
  }
  return path;
}

inline std::vector<double> ReconstructSteering(std::span<const double> kappa,
                                               const VehicleParams& p) {
  std::vector<double> delta;
  delta.reserve(kappa.size());
  for (double k : kappa) delta.push_back(std::atan(p.l * k));
  return delta;
}

struct CppPlan {
  std::vector<CppWaypoint> waypoints;
  PrimitivePath path;              // in the (s, e_y) plane
  std::vector<PathSample> fitted;  // samples of `path`
  // Global-frame samples: positions mapped back from (s, e_y), traveled
  // length and curvature from the road-frame kinematics, steering.
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> eta;
  std::vector<double> kappa;
  std::vector<double> delta;
  bool merged_waypoints = false;
};

inline CppPlan PlanCpp(const RoadCenterline& cl,
                       std::span<const ObstacleEnvelope> envelopes,
                       std::span<const PassSide> sides, double s_start,
                       double e_start, double s_end, double e_end,
                       const VehicleParams& p, const CppSettings& set) {
  CppPlan plan;
  plan.waypoints = CppWaypoints(envelopes, sides, s_start, e_start, s_end,
                                e_end, set.safety_margin);
  for (const auto& w : plan.waypoints) {
    plan.merged_waypoints = plan.merged_waypoints || w.merged;
  }
  plan.path = FitPrimitivePath(plan.waypoints, set);
  plan.fitted = plan.path.Sample(set.sample_step);
  const std::size_t n = plan.fitted.size();
  for (const PathSample& ps : plan.fitted) {
    const double s = std::clamp(ps.x, cl.s_begin(), cl.s_end());
    const Vec2 g = FrenetToGlobal(cl, s, ps.y);
    plan.x.push_back(g.x());
    plan.y.push_back(g.y());
  }
  // First-order inversion of the spatial kinematics in the road frame. The
  // global polyline image of the centerline has kinks at its knots, so
  // differencing mapped points would alias them into curvature spikes.
  plan.eta.assign(n, 0.0);
  std::vector<double> chord_epsi(n > 0 ? n - 1 : 0);
  std::vector<double> chord_ds(chord_epsi.size());
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double ds = plan.fitted[i + 1].x - plan.fitted[i].x;
    const double de = plan.fitted[i + 1].y - plan.fitted[i].y;
    const double sm = std::clamp(0.5 * (plan.fitted[i].x + plan.fitted[i + 1].x),
                                 cl.s_begin(), cl.s_end());
    const double em = 0.5 * (plan.fitted[i].y + plan.fitted[i + 1].y);
    const double scale = 1.0 - cl.Curvature(sm) * em;
    chord_ds[i] = ds;
    chord_epsi[i] = std::atan2(de, scale * ds);
    plan.eta[i + 1] = plan.eta[i] + std::hypot(scale * ds, de);
  }
  plan.kappa.assign(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double ds = 0.5 * (chord_ds[i - 1] + chord_ds[i]);
    if (ds <= 0) continue;
    const double s = std::clamp(plan.fitted[i].x, cl.s_begin(), cl.s_end());
    const double kr = cl.Curvature(s);
    const double epsi = 0.5 * (chord_epsi[i - 1] + chord_epsi[i]);
    const double depsi = (chord_epsi[i] - chord_epsi[i - 1]) / ds;
    plan.kappa[i] =
        (depsi + kr) * std::cos(epsi) / (1.0 - kr * plan.fitted[i].y);
    if (std::abs(plan.kappa[i]) < 1e-12) plan.kappa[i] = 0.0;
  }
  if (n >= 3) {
    plan.kappa[0] = plan.kappa[1];
    plan.kappa[n - 1] = plan.kappa[n - 2];
  }
  plan.delta = ReconstructSteering(plan.kappa, p);
  return plan;
}

}  // namespace slpplan

#endif  // SLPPLAN_CLOTHOID_HPP_
