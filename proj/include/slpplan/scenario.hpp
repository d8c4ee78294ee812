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

// Scenario files: JSON documents describing road, obstacles, vehicle, poses
// and solver settings. Angles are in radians; any angle key may instead be
// given in degrees with a "_deg" suffix (e.g. "delta_max_deg").

#ifndef SLPPLAN_SCENARIO_HPP_
#define SLPPLAN_SCENARIO_HPP_

#include <cmath>
#include <cstddef>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "slpplan/error.hpp"
#include "slpplan/frenet_frame.hpp"
#include "slpplan/problem.hpp"
#include "slpplan/vehicle_model.hpp"

namespace slpplan {

struct Obstacle {
  Polygon polygon;
  PassSide side = PassSide::kLeft;
};

struct StartPose {
  double s = 0.0;
  double e_psi = 0.0;
  double e_y = 0.0;
  double delta_prev = 0.0;
};

struct EndPose {
  double e_psi = 0.0;
  double e_y = 0.0;
};

struct Scenario {
  std::string name;
  std::string description;
  std::vector<Vec2> centerline_waypoints;
  double resample_step = 0.0;
  RoadWidth road_halfwidth;
  std::vector<Obstacle> obstacles;
  VehicleParams vehicle;
  StartPose start_pose;
  EndPose end_pose;
  double horizon = 0.0;
  SolverSettings settings;

  void Validate() const;
};

namespace detail {

using nlohmann::json;

inline std::string FieldPath(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

[[noreturn]] inline void FieldError(const std::string& path,
                                    const std::string& what) {
  throw Error(ErrorKind::kParse, "field '" + path + "': " + what);
}

inline const json& Require(const json& obj, const std::string& key,
                           const std::string& parent) {
  if (!obj.is_object()) FieldError(parent, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) FieldError(FieldPath(parent, key), "missing");
  return *it;
}

inline double AsNumber(const json& v, const std::string& path) {
  if (!v.is_number()) FieldError(path, "expected a number");
  return v.get<double>();
}

inline std::optional<double> Number(const json& obj, const std::string& key,
                                    const std::string& parent) {
  if (!obj.is_object()) FieldError(parent, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) return std::nullopt;
  return AsNumber(*it, FieldPath(parent, key));
}

// Angle in radians under `key`, or in degrees under `key_deg`.
inline std::optional<double> Angle(const json& obj, const std::string& key,
                                   const std::string& parent) {
  const auto rad = Number(obj, key, parent);
  const auto deg = Number(obj, key + "_deg", parent);
  if (rad && deg) {
    FieldError(FieldPath(parent, key), "given both in radians and degrees");
  }
  if (deg) return *deg * kDegToRad;
  return rad;
}

inline Vec2 AsPoint(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) FieldError(path, "expected [x, y]");
  return {AsNumber(v[0], path + "[0]"), AsNumber(v[1], path + "[1]")};
}

inline std::vector<Vec2> AsPoints(const json& v, const std::string& path) {
  if (!v.is_array()) FieldError(path, "expected an array of [x, y]");
  std::vector<Vec2> pts;
  for (std::size_t i = 0; i < v.size(); ++i) {
    pts.push_back(AsPoint(v[i], path + "[" + std::to_string(i) + "]"));
  }
  return pts;
}

inline PassSide AsSide(const json& v, const std::string& path) {
  if (v == "left") return PassSide::kLeft;
  if (v == "right") return PassSide::kRight;
  FieldError(path, "expected \"left\" or \"right\"");
}

inline void CheckKeys(const json& obj, const std::string& parent,
                      std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) {
      const std::string k = a;
      ok = ok || it.key() == k || it.key() == k + "_deg";
    }
    if (!ok) FieldError(FieldPath(parent, it.key()), "unknown key");
  }
}

inline std::pair<int, int> LineColumn(const std::string& text,
                                      std::size_t byte) {
  int line = 1;
  int col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace detail

inline void Scenario::Validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorKind::kInvalidInput, what);
  };
  if (centerline_waypoints.size() < 2) {
    fail("centerline needs at least 2 waypoints");
  }
  for (std::size_t i = 0; i + 1 < centerline_waypoints.size(); ++i) {
    if ((centerline_waypoints[i + 1] - centerline_waypoints[i]).norm() <
        1e-12) {
      throw Error(ErrorKind::kDuplicateWaypoint,
                  "centerline waypoints " + std::to_string(i) + " and " +
                      std::to_string(i + 1) + " coincide");
    }
  }
  const double half_pi = std::numbers::pi / 2;
  if (!(std::abs(start_pose.e_psi) < half_pi)) {
    fail("start e_psi must satisfy |e_psi| < 90 deg (forward motion)");
  }
  if (!(std::abs(end_pose.e_psi) < half_pi)) {
    fail("end e_psi must satisfy |e_psi| < 90 deg (forward motion)");
  }
  if (!(horizon > 0)) fail("horizon must be positive");
  double length = 0.0;
  for (std::size_t i = 0; i + 1 < centerline_waypoints.size(); ++i) {
    length += (centerline_waypoints[i + 1] - centerline_waypoints[i]).norm();
  }
  if (!(start_pose.s >= 0.0 && start_pose.s <= length)) {
    fail("start s lies outside the centerline arc-length range [0, " +
         std::to_string(length) + "]");
  }
  if (start_pose.s + horizon > length + 1e-6) {
    fail("start s + horizon exceeds the centerline length " +
         std::to_string(length));
  }
  if (road_halfwidth.s_from.empty() ||
      road_halfwidth.s_from.size() != road_halfwidth.halfwidth.size()) {
    fail("road_halfwidth table is empty or inconsistent");
  }
  for (std::size_t i = 0; i < road_halfwidth.halfwidth.size(); ++i) {
    if (!(road_halfwidth.halfwidth[i] > 0)) fail("road halfwidth must be positive");
    if (i > 0 && !(road_halfwidth.s_from[i] > road_halfwidth.s_from[i - 1])) {
      fail("road_halfwidth stations must increase");
    }
  }
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    if (obstacles[i].polygon.size() < 3) {
      fail("obstacle " + std::to_string(i) + " needs at least 3 vertices");
    }
  }
  vehicle.Validate();
  settings.Validate();
  if (!(std::abs(start_pose.delta_prev) <= vehicle.delta_max)) {
    fail("start delta_prev exceeds delta_max");
  }
}

inline Scenario ParseScenario(const std::string& text) {
  using detail::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = detail::LineColumn(text, e.byte > 0 ? e.byte - 1 : 0);
    throw Error(ErrorKind::kParse, "line " + std::to_string(line) +
                                       ", column " + std::to_string(col) +
                                       ": " + e.what());
  }
  if (!doc.is_object()) detail::FieldError("<root>", "expected an object");
  detail::CheckKeys(doc, "",
                    {"name", "description", "centerline", "resample_step",
                     "road_halfwidth", "obstacles", "vehicle", "start", "end",
                     "horizon", "settings"});

  Scenario sc;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) detail::FieldError("name", "expected a string");
    sc.name = doc["name"].get<std::string>();
  }
  if (doc.contains("description")) {
    if (!doc["description"].is_string()) {
      detail::FieldError("description", "expected a string");
    }
    sc.description = doc["description"].get<std::string>();
  }
  sc.centerline_waypoints =
      detail::AsPoints(detail::Require(doc, "centerline", ""), "centerline");
  sc.resample_step = detail::Number(doc, "resample_step", "").value_or(0.0);

  const json& hw = detail::Require(doc, "road_halfwidth", "");
  if (hw.is_number()) {
    sc.road_halfwidth = RoadWidth::Constant(hw.get<double>());
  } else if (hw.is_array() && !hw.empty()) {
    sc.road_halfwidth.s_from.clear();
    sc.road_halfwidth.halfwidth.clear();
    for (std::size_t i = 0; i < hw.size(); ++i) {
      const std::string path = "road_halfwidth[" + std::to_string(i) + "]";
      sc.road_halfwidth.s_from.push_back(
          detail::AsNumber(detail::Require(hw[i], "s_from", path), path + ".s_from"));
      sc.road_halfwidth.halfwidth.push_back(detail::AsNumber(
          detail::Require(hw[i], "halfwidth", path), path + ".halfwidth"));
    }
  } else {
    detail::FieldError("road_halfwidth",
                       "expected a number or a table of {s_from, halfwidth}");
  }

  if (doc.contains("obstacles")) {
    const json& obs = doc["obstacles"];
    if (!obs.is_array()) detail::FieldError("obstacles", "expected an array");
    for (std::size_t i = 0; i < obs.size(); ++i) {
      const std::string path = "obstacles[" + std::to_string(i) + "]";
      if (!obs[i].is_object()) detail::FieldError(path, "expected an object");
      detail::CheckKeys(obs[i], path, {"polygon", "pass"});
      Obstacle o;
      o.polygon = detail::AsPoints(detail::Require(obs[i], "polygon", path),
                                   path + ".polygon");
      o.side = detail::AsSide(detail::Require(obs[i], "pass", path),
                              path + ".pass");
      sc.obstacles.push_back(std::move(o));
    }
  }

  if (doc.contains("vehicle")) {
    const json& v = doc["vehicle"];
    detail::CheckKeys(v, "vehicle",
                      {"a", "b", "w", "l", "delta_max", "delta_rate_max", "mu"});
    VehicleParams& p = sc.vehicle;
    p.a = detail::Number(v, "a", "vehicle").value_or(p.a);
    p.b = detail::Number(v, "b", "vehicle").value_or(p.b);
    p.w = detail::Number(v, "w", "vehicle").value_or(p.w);
    p.l = detail::Number(v, "l", "vehicle").value_or(p.l);
    p.delta_max = detail::Angle(v, "delta_max", "vehicle").value_or(p.delta_max);
    p.delta_rate_max =
        detail::Angle(v, "delta_rate_max", "vehicle").value_or(p.delta_rate_max);
    p.mu = detail::Number(v, "mu", "vehicle").value_or(p.mu);
  }

  const json& st = detail::Require(doc, "start", "");
  detail::CheckKeys(st, "start", {"s", "e_psi", "e_y", "delta_prev"});
  sc.start_pose.s = detail::Number(st, "s", "start").value_or(0.0);
  sc.start_pose.e_psi = detail::Angle(st, "e_psi", "start").value_or(0.0);
  sc.start_pose.e_y = detail::Number(st, "e_y", "start").value_or(0.0);
  sc.start_pose.delta_prev =
      detail::Angle(st, "delta_prev", "start").value_or(0.0);
  if (doc.contains("end")) {
    const json& en = doc["end"];
    detail::CheckKeys(en, "end", {"e_psi", "e_y"});
    sc.end_pose.e_psi = detail::Angle(en, "e_psi", "end").value_or(0.0);
    sc.end_pose.e_y = detail::Number(en, "e_y", "end").value_or(0.0);
  }
  sc.horizon = detail::AsNumber(detail::Require(doc, "horizon", ""), "horizon");

  if (doc.contains("settings")) {
    const json& s = doc["settings"];
    detail::CheckKeys(s, "settings",
                      {"N", "I_max", "lambda", "W_sigma", "T_s", "v_ref",
                       "parallel_overtake", "footprint_enabled",
                       "safety_margin", "jag_alternations", "jag_threshold",
                       "collision_tol", "v_cap", "cpp_sharpness_cap",
                       "slack_tol"});
    SolverSettings& ss = sc.settings;
    auto integer = [&](const char* key, auto& dst) {
      if (!s.contains(key)) return;
      if (!s[key].is_number_integer() || s[key].template get<long>() < 0) {
        detail::FieldError(std::string("settings.") + key,
                           "expected a nonnegative integer");
      }
      dst = static_cast<std::remove_reference_t<decltype(dst)>>(
          s[key].template get<long>());
    };
    auto flag = [&](const char* key, bool& dst) {
      if (!s.contains(key)) return;
      if (!s[key].is_boolean()) {
        detail::FieldError(std::string("settings.") + key, "expected a boolean");
      }
      dst = s[key].get<bool>();
    };
    integer("N", ss.N);
    integer("I_max", ss.I_max);
    integer("jag_alternations", ss.jag_alternations);
    flag("parallel_overtake", ss.parallel_overtake);
    flag("footprint_enabled", ss.footprint_enabled);
    ss.lambda = detail::Number(s, "lambda", "settings").value_or(ss.lambda);
    ss.w_sigma = detail::Number(s, "W_sigma", "settings").value_or(ss.w_sigma);
    ss.T_s = detail::Number(s, "T_s", "settings").value_or(ss.T_s);
    ss.v_ref = detail::Number(s, "v_ref", "settings").value_or(ss.v_ref);
    ss.safety_margin =
        detail::Number(s, "safety_margin", "settings").value_or(ss.safety_margin);
    ss.jag_threshold =
        detail::Angle(s, "jag_threshold", "settings").value_or(ss.jag_threshold);
    ss.collision_tol =
        detail::Number(s, "collision_tol", "settings").value_or(ss.collision_tol);
    ss.v_cap = detail::Number(s, "v_cap", "settings").value_or(ss.v_cap);
    ss.cpp_sharpness_cap = detail::Number(s, "cpp_sharpness_cap", "settings")
                               .value_or(ss.cpp_sharpness_cap);
    ss.slack_tol = detail::Number(s, "slack_tol", "settings").value_or(ss.slack_tol);
  }
  sc.Validate();
  return sc;
}

inline Scenario LoadScenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return ParseScenario(buf.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

inline std::string SerializeScenario(const Scenario& sc) {
  using detail::json;
  json doc;
  doc["name"] = sc.name;
  if (!sc.description.empty()) doc["description"] = sc.description;
  json cl = json::array();
  for (const Vec2& p : sc.centerline_waypoints) cl.push_back({p.x(), p.y()});
  doc["centerline"] = cl;
  if (sc.resample_step > 0) doc["resample_step"] = sc.resample_step;
  if (sc.road_halfwidth.s_from.size() == 1 && sc.road_halfwidth.s_from[0] == 0.0) {
    doc["road_halfwidth"] = sc.road_halfwidth.halfwidth[0];
  } else {
    json t = json::array();
    for (std::size_t i = 0; i < sc.road_halfwidth.s_from.size(); ++i) {
      t.push_back({{"s_from", sc.road_halfwidth.s_from[i]},
                   {"halfwidth", sc.road_halfwidth.halfwidth[i]}});
    }
    doc["road_halfwidth"] = t;
  }
  json obs = json::array();
  for (const Obstacle& o : sc.obstacles) {
    json poly = json::array();
    for (const Vec2& p : o.polygon) poly.push_back({p.x(), p.y()});
    obs.push_back({{"polygon", poly},
                   {"pass", o.side == PassSide::kLeft ? "left" : "right"}});
  }
  doc["obstacles"] = obs;
  const VehicleParams& p = sc.vehicle;
  doc["vehicle"] = {{"a", p.a},
                    {"b", p.b},
                    {"w", p.w},
                    {"l", p.l},
                    {"delta_max", p.delta_max},
                    {"delta_rate_max", p.delta_rate_max},
                    {"mu", p.mu}};
  doc["start"] = {{"s", sc.start_pose.s},
                  {"e_psi", sc.start_pose.e_psi},
                  {"e_y", sc.start_pose.e_y},
                  {"delta_prev", sc.start_pose.delta_prev}};
  doc["end"] = {{"e_psi", sc.end_pose.e_psi}, {"e_y", sc.end_pose.e_y}};
  doc["horizon"] = sc.horizon;
  const SolverSettings& s = sc.settings;
  doc["settings"] = {{"N", s.N},
                     {"I_max", s.I_max},
                     {"lambda", s.lambda},
                     {"W_sigma", s.w_sigma},
                     {"T_s", s.T_s},
                     {"v_ref", s.v_ref},
                     {"parallel_overtake", s.parallel_overtake},
                     {"footprint_enabled", s.footprint_enabled},
                     {"safety_margin", s.safety_margin},
                     {"jag_alternations", s.jag_alternations},
                     {"jag_threshold", s.jag_threshold},
                     {"collision_tol", s.collision_tol},
                     {"v_cap", s.v_cap},
                     {"cpp_sharpness_cap", s.cpp_sharpness_cap},
                     {"slack_tol", s.slack_tol}};
  return doc.dump(2) + "\n";
}

inline void SaveScenario(const Scenario& sc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path);
  out << SerializeScenario(sc);
  if (!out) throw Error(ErrorKind::kIo, "write failed for " + path);
}

// Road-aligned planning problem for the scenario.
inline PlanningProblem ToProblem(const Scenario& sc) {
  sc.Validate();
  PlanningProblem prob;
  prob.centerline =
      RoadCenterline::Build(sc.centerline_waypoints, sc.resample_step);
  prob.road = sc.road_halfwidth;
  std::vector<Polygon> polys;
  for (const Obstacle& o : sc.obstacles) {
    polys.push_back(o.polygon);
    prob.sides.push_back(o.side);
  }
  prob.envelopes = MapObstacles(polys, prob.centerline);
  prob.vehicle = sc.vehicle;
  prob.s_start = sc.start_pose.s;
  prob.horizon = std::min(sc.horizon, prob.centerline.s_end() - sc.start_pose.s);
  prob.start = {sc.start_pose.e_psi, sc.start_pose.e_y};
  prob.delta_prev = sc.start_pose.delta_prev;
  prob.end = {sc.end_pose.e_psi, sc.end_pose.e_y};
  prob.settings = sc.settings;
  return prob;
}

}  // namespace slpplan

#endif  // SLPPLAN_SCENARIO_HPP_
