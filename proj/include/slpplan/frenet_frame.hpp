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

// Road-aligned (s, e_y) frame: arc-length parameterized centerline,
// transforms between global and road coordinates, obstacle envelopes and
// the piecewise-constant driving corridor.
//
// Sign convention: e_y is positive to the left of the centerline tangent and
// curvature is positive for left-hand (counter-clockwise) turns.

#ifndef SLPPLAN_FRENET_FRAME_HPP_
#define SLPPLAN_FRENET_FRAME_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "slpplan/error.hpp"

namespace slpplan {

using Vec2 = Eigen::Vector2d;

inline double WrapAngle(double angle) {
  return std::remainder(angle, 2.0 * std::numbers::pi);
}

struct FrenetPoint {
  double s = 0.0;
  double e_y = 0.0;
};

class RoadCenterline {
 public:
  // Cumulative chord-length parameterization of `waypoints`. A positive
  // `resample_step` first resamples the polyline uniformly; zero keeps the
  // input vertices as stations.
  static RoadCenterline Build(std::span<const Vec2> waypoints,
                              double resample_step = 0.0);

  const std::vector<double>& stations() const { return stations_; }
  const std::vector<Vec2>& positions() const { return positions_; }
  const std::vector<double>& headings() const { return headings_; }
  const std::vector<double>& curvatures() const { return curvatures_; }

  double s_begin() const { return stations_.front(); }
  double s_end() const { return stations_.back(); }
  double length() const { return s_end() - s_begin(); }

  bool Contains(double s, double tol = 1e-9) const {
    return s >= s_begin() - tol && s <= s_end() + tol;
  }

  Vec2 Position(double s) const {
    auto [k, t] = Locate(s);
    return positions_[k] + t * (positions_[k + 1] - positions_[k]);
  }
  double Heading(double s) const {
    auto [k, t] = Locate(s);
    return headings_[k] + t * (headings_[k + 1] - headings_[k]);
  }
  double Curvature(double s) const {
    auto [k, t] = Locate(s);
    return curvatures_[k] + t * (curvatures_[k + 1] - curvatures_[k]);
  }
  Vec2 LeftNormal(double s) const {
    const double psi = Heading(s);
    return {-std::sin(psi), std::cos(psi)};
  }

 private:
  // Segment index and fraction for s, clamped into the station range.
  std::pair<std::size_t, double> Locate(double s) const {
    const std::size_t n = stations_.size();
    auto it = std::upper_bound(stations_.begin(), stations_.end(), s);
    std::size_t k = it == stations_.begin()
                        ? 0
                        : static_cast<std::size_t>(it - stations_.begin()) - 1;
    k = std::min(k, n - 2);
    const double h = stations_[k + 1] - stations_[k];
    const double t = std::clamp((s - stations_[k]) / h, 0.0, 1.0);
    return {k, t};
  }

  std::vector<double> stations_;
  std::vector<Vec2> positions_;
  std::vector<double> headings_;
  std::vector<double> curvatures_;
};

inline RoadCenterline RoadCenterline::Build(std::span<const Vec2> waypoints,
                                            double resample_step) {
  if (waypoints.size() < 2) {
    throw Error(ErrorKind::kInvalidInput,
                "centerline needs at least 2 waypoints");
  }
  for (std::size_t i = 0; i + 1 < waypoints.size(); ++i) {
    if ((waypoints[i + 1] - waypoints[i]).norm() < 1e-12) {
      throw Error(ErrorKind::kDuplicateWaypoint,
                  "waypoints " + std::to_string(i) + " and " +
                      std::to_string(i + 1) + " coincide");
    }
  }

  std::vector<Vec2> points(waypoints.begin(), waypoints.end());
  if (resample_step > 0.0) {
    std::vector<double> chord(points.size(), 0.0);
    for (std::size_t i = 1; i < points.size(); ++i) {
      chord[i] = chord[i - 1] + (points[i] - points[i - 1]).norm();
    }
    const double total = chord.back();
    const auto count = static_cast<std::size_t>(
        std::max(1.0, std::ceil(total / resample_step - 1e-9)));
    std::vector<Vec2> resampled;
    resampled.reserve(count + 1);
    std::size_t seg = 0;
    for (std::size_t i = 0; i <= count; ++i) {
      const double target = total * static_cast<double>(i) /
                            static_cast<double>(count);
      while (seg + 2 < chord.size() && chord[seg + 1] < target) ++seg;
      const double t = (target - chord[seg]) / (chord[seg + 1] - chord[seg]);
      resampled.push_back(points[seg] + t * (points[seg + 1] - points[seg]));
    }
    points = std::move(resampled);
  }

  RoadCenterline cl;
  const std::size_t n = points.size();
  cl.positions_ = points;
  cl.stations_.assign(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    cl.stations_[i] = cl.stations_[i - 1] + (points[i] - points[i - 1]).norm();
  }

  // Headings: one-sided chords at the ends, central differences inside.
  cl.headings_.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = i + 1 == n ? n - 1 : i + 1;
    const Vec2 d = points[hi] - points[lo];
    const double raw = std::atan2(d.y(), d.x());
    cl.headings_[i] =
        i == 0 ? raw : cl.headings_[i - 1] + WrapAngle(raw - cl.headings_[i - 1]);
  }

  cl.curvatures_.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = i + 1 == n ? n - 1 : i + 1;
    const double dpsi = cl.headings_[hi] - cl.headings_[lo];
    // Collinear stretches keep an exact zero.
    cl.curvatures_[i] = std::abs(dpsi) < 1e-12
                            ? 0.0
                            : dpsi / (cl.stations_[hi] - cl.stations_[lo]);
  }
  return cl;
}

inline Vec2 FrenetToGlobal(const RoadCenterline& cl, double s, double e_y) {
  if (!cl.Contains(s)) {
    throw Error(ErrorKind::kOutOfRange,
                "s=" + std::to_string(s) + " outside centerline [" +
                    std::to_string(cl.s_begin()) + ", " +
                    std::to_string(cl.s_end()) + "]");
  }
  return cl.Position(s) + e_y * cl.LeftNormal(s);
}

// Inverse of FrenetToGlobal. Among all foot points the one with the smallest
// |e_y| is returned; if that offset reaches the local curvature radius the
// projection is reported as ambiguous.
inline FrenetPoint GlobalToFrenet(const RoadCenterline& cl, const Vec2& point) {
  const auto& st = cl.stations();
  // Tangential residual; its zeros are the foot points.
  auto residual = [&](double s) {
    const double psi = cl.Heading(s);
    const Vec2 d = point - cl.Position(s);
    return d.x() * std::cos(psi) + d.y() * std::sin(psi);
  };

  double best_s = 0.0;
  double best_e = std::numeric_limits<double>::infinity();
  bool found = false;
  auto consider = [&](double s) {
    const double e = (point - cl.Position(s)).dot(cl.LeftNormal(s));
    if (std::abs(e) < std::abs(best_e)) {
      best_s = s;
      best_e = e;
      found = true;
    }
  };

  double g_lo = residual(st.front());
  if (g_lo == 0.0) consider(st.front());
  for (std::size_t k = 0; k + 1 < st.size(); ++k) {
    double a = st[k];
    double b = st[k + 1];
    const double g_hi = residual(b);
    if (g_hi == 0.0) consider(b);
    if ((g_lo < 0.0 && g_hi > 0.0) || (g_lo > 0.0 && g_hi < 0.0)) {
      double ga = g_lo;
      for (int it = 0; it < 200 && b - a > 1e-14 * (1.0 + std::abs(a)); ++it) {
        const double m = 0.5 * (a + b);
        const double gm = residual(m);
        if (gm == 0.0) {
          a = b = m;
          break;
        }
        if ((gm < 0.0) == (ga < 0.0)) {
          a = m;
          ga = gm;
        } else {
          b = m;
        }
      }
      consider(0.5 * (a + b));
    }
    g_lo = g_hi;
  }

  if (!found) {
    throw Error(ErrorKind::kOutOfRange,
                "point (" + std::to_string(point.x()) + ", " +
                    std::to_string(point.y()) +
                    ") has no foot point on the centerline");
  }
  if (std::abs(cl.Curvature(best_s) * best_e) >= 1.0) {
    throw Error(ErrorKind::kProjectionAmbiguous,
                "point (" + std::to_string(point.x()) + ", " +
                    std::to_string(point.y()) +
                    ") lies beyond the local curvature radius");
  }
  return {best_s, best_e};
}

// Axis-aligned rectangle in the (s, e_y) plane bounding a mapped obstacle.
struct ObstacleEnvelope {
  double s_begin = 0.0;
  double s_end = 0.0;
  double e_y_low = 0.0;
  double e_y_high = 0.0;
  // Long-axis heading in the (s, e_y) plane, folded into (-pi/2, pi/2].
  double heading = 0.0;

  ObstacleEnvelope Inflated(double margin) const {
    return {s_begin - margin, s_end + margin, e_y_low - margin,
            e_y_high + margin, heading};
  }
};

using Polygon = std::vector<Vec2>;

inline ObstacleEnvelope MapObstacle(const Polygon& polygon,
                                    const RoadCenterline& cl) {
  if (polygon.size() < 3) {
    throw Error(ErrorKind::kInvalidInput,
                "obstacle polygon needs at least 3 vertices");
  }
  ObstacleEnvelope env{std::numeric_limits<double>::infinity(),
                       -std::numeric_limits<double>::infinity(),
                       std::numeric_limits<double>::infinity(),
                       -std::numeric_limits<double>::infinity(), 0.0};
  std::vector<FrenetPoint> mapped;
  mapped.reserve(polygon.size());
  for (const Vec2& v : polygon) {
    const FrenetPoint f = GlobalToFrenet(cl, v);
    mapped.push_back(f);
    env.s_begin = std::min(env.s_begin, f.s);
    env.s_end = std::max(env.s_end, f.s);
    env.e_y_low = std::min(env.e_y_low, f.e_y);
    env.e_y_high = std::max(env.e_y_high, f.e_y);
  }
  std::size_t longest = 0;
  double longest_len = -1.0;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const double len = (polygon[(i + 1) % polygon.size()] - polygon[i]).norm();
    if (len > longest_len + 1e-12) {
      longest_len = len;
      longest = i;
    }
  }
  const FrenetPoint& p0 = mapped[longest];
  const FrenetPoint& p1 = mapped[(longest + 1) % mapped.size()];
  double heading = std::atan2(p1.e_y - p0.e_y, p1.s - p0.s);
  if (heading > std::numbers::pi / 2) heading -= std::numbers::pi;
  if (heading <= -std::numbers::pi / 2) heading += std::numbers::pi;
  env.heading = heading;
  return env;
}

inline std::vector<ObstacleEnvelope> MapObstacles(
    std::span<const Polygon> obstacles, const RoadCenterline& cl) {
  std::vector<ObstacleEnvelope> out;
  out.reserve(obstacles.size());
  for (const Polygon& p : obstacles) out.push_back(MapObstacle(p, cl));
  return out;
}

enum class PassSide { kLeft, kRight };

// Piecewise-constant road half-width: halfwidth[i] applies from s_from[i]
// until the next entry. The first entry also covers everything before it.
struct RoadWidth {
  std::vector<double> s_from{0.0};
  std::vector<double> halfwidth{3.5};

  static RoadWidth Constant(double hw) { return {{0.0}, {hw}}; }

  double At(double s) const {
    auto it = std::upper_bound(s_from.begin(), s_from.end(), s);
    const std::size_t k =
        it == s_from.begin() ? 0
                             : static_cast<std::size_t>(it - s_from.begin()) - 1;
    return halfwidth[k];
  }
};

class Corridor {
 public:
  // Breakpoints b_0 < ... < b_{K-1}; interval i spans [b_{i-1}, b_i), with
  // interval 0 and interval K extending to -inf and +inf.
  Corridor(std::vector<double> breakpoints, std::vector<double> lower,
           std::vector<double> upper)
      : breakpoints_(std::move(breakpoints)),
        lower_(std::move(lower)),
        upper_(std::move(upper)) {
    if (lower_.size() != breakpoints_.size() + 1 ||
        upper_.size() != lower_.size()) {
      throw Error(ErrorKind::kDimensionMismatch, "corridor interval count");
    }
  }

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& interval_lower() const { return lower_; }
  const std::vector<double>& interval_upper() const { return upper_; }

  // At a breakpoint the more restrictive neighbouring value applies.
  double LowerAt(double s) const {
    auto [k, on_break] = Locate(s);
    return on_break ? std::max(lower_[k], lower_[k + 1]) : lower_[k];
  }
  double UpperAt(double s) const {
    auto [k, on_break] = Locate(s);
    return on_break ? std::min(upper_[k], upper_[k + 1]) : upper_[k];
  }

 private:
  static constexpr double kBreakTol = 1e-9;

  // Returns (interval index, whether s sits on breakpoint k).
  std::pair<std::size_t, bool> Locate(double s) const {
    auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(),
                               s - kBreakTol);
    const auto k = static_cast<std::size_t>(it - breakpoints_.begin());
    if (it != breakpoints_.end() && std::abs(*it - s) <= kBreakTol) {
      return {k, true};
    }
    return {k, false};
  }

  std::vector<double> breakpoints_;
  std::vector<double> lower_;
  std::vector<double> upper_;
};

// Builds corridor bounds from the road width and the chosen passing side of
// every envelope. `vehicle_width` is the full width 2w; each envelope must
// leave at least that much gap somewhere along its s-extent.
inline Corridor CorridorBounds(std::span<const ObstacleEnvelope> envelopes,
                               std::span<const PassSide> sides,
                               const RoadWidth& road, double vehicle_width) {
  if (envelopes.size() != sides.size()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "one passing side per obstacle envelope required");
  }
  std::vector<double> breaks;
  for (std::size_t i = 1; i < road.s_from.size(); ++i) {
    breaks.push_back(road.s_from[i]);
  }
  for (const auto& env : envelopes) {
    if (!(env.s_begin < env.s_end) || !(env.e_y_low < env.e_y_high)) {
      throw Error(ErrorKind::kInvalidInput, "degenerate obstacle envelope");
    }
    breaks.push_back(env.s_begin);
    breaks.push_back(env.s_end);
  }
  std::sort(breaks.begin(), breaks.end());
  std::vector<double> unique;
  for (double b : breaks) {
    if (unique.empty() || b - unique.back() > 1e-9) unique.push_back(b);
  }

  const std::size_t intervals = unique.size() + 1;
  std::vector<double> lower(intervals);
  std::vector<double> upper(intervals);
  auto probe = [&](std::size_t i) {
    if (unique.empty()) return 0.0;
    if (i == 0) return unique.front() - 1.0;
    if (i == unique.size()) return unique.back() + 1.0;
    return 0.5 * (unique[i - 1] + unique[i]);
  };
  for (std::size_t i = 0; i < intervals; ++i) {
    const double s = probe(i);
    const double hw = road.At(s);
    lower[i] = -hw;
    upper[i] = hw;
    for (std::size_t o = 0; o < envelopes.size(); ++o) {
      const auto& env = envelopes[o];
      if (s <= env.s_begin || s >= env.s_end) continue;
      if (sides[o] == PassSide::kLeft) {
        lower[i] = std::max(lower[i], env.e_y_high);
      } else {
        upper[i] = std::min(upper[i], env.e_y_low);
      }
    }
  }

  for (std::size_t i = 0; i < intervals; ++i) {
    if (!(upper[i] - lower[i] > 0.0)) {
      throw Error(ErrorKind::kInfeasibleCorridor,
                  "corridor closes near s=" + std::to_string(probe(i)));
    }
  }
  for (std::size_t o = 0; o < envelopes.size(); ++o) {
    double widest = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < intervals; ++i) {
      const double s = probe(i);
      if (s > envelopes[o].s_begin && s < envelopes[o].s_end) {
        widest = std::max(widest, upper[i] - lower[i]);
      }
    }
    if (widest < vehicle_width) {
      throw Error(ErrorKind::kInfeasibleCorridor,
                  "gap beside obstacle " + std::to_string(o) + " is " +
                      std::to_string(widest) + " m, vehicle needs " +
                      std::to_string(vehicle_width) + " m");
    }
  }
  return Corridor(std::move(unique), std::move(lower), std::move(upper));
}

}  // namespace slpplan

#endif  // SLPPLAN_FRENET_FRAME_HPP_
