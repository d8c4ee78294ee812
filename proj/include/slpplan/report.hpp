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

// Report files for a plan: per-station CSV, four SVG plots and a JSON
// summary. Output is a pure function of the plan, so repeated runs produce
// identical bytes.

#ifndef SLPPLAN_REPORT_HPP_
#define SLPPLAN_REPORT_HPP_

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "slpplan/error.hpp"
#include "slpplan/footprint.hpp"
#include "slpplan/planner.hpp"

namespace slpplan {

namespace detail {

inline std::string Num(double v, int digits = 10) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

inline std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Minimal SVG line chart with linear axes.
class SvgPlot {
 public:
  SvgPlot(std::string title, std::string xlabel, std::string ylabel,
          bool equal_aspect = false)
      : title_(std::move(title)),
        xlabel_(std::move(xlabel)),
        ylabel_(std::move(ylabel)),
        equal_(equal_aspect) {}

  void Line(const std::vector<double>& x, const std::vector<double>& y,
            const std::string& color, const std::string& cls,
            const std::string& dash = "", double width = 1.5) {
    items_.push_back({x, y, color, cls, dash, width, false});
    Extend(x, y);
  }
  void Polygon(const std::vector<double>& x, const std::vector<double>& y,
               const std::string& color, const std::string& cls,
               const std::string& dash = "") {
    items_.push_back({x, y, color, cls, dash, 1.0, true});
    Extend(x, y);
  }
  // Horizontal line across the full x-range.
  void HLine(double y, const std::string& color, const std::string& cls,
             const std::string& dash) {
    hlines_.push_back({y, color, cls, dash});
    ymin_ = std::min(ymin_, y);
    ymax_ = std::max(ymax_, y);
  }

  std::string Render() const {
    constexpr double W = 900, H = 420, L = 70, R = 20, T = 40, B = 50;
    double x0 = xmin_, x1 = xmax_, y0 = ymin_, y1 = ymax_;
    if (!(x1 > x0)) { x0 -= 1; x1 += 1; }
    if (!(y1 > y0)) { y0 -= 1; y1 += 1; }
    const double padx = 0.02 * (x1 - x0), pady = 0.05 * (y1 - y0);
    x0 -= padx; x1 += padx; y0 -= pady; y1 += pady;
    double sx = (W - L - R) / (x1 - x0);
    double sy = (H - T - B) / (y1 - y0);
    if (equal_) {
      const double sc = std::min(sx, sy);
      const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
      sx = sy = sc;
      x0 = cx - 0.5 * (W - L - R) / sc;
      x1 = cx + 0.5 * (W - L - R) / sc;
      y0 = cy - 0.5 * (H - T - B) / sc;
      y1 = cy + 0.5 * (H - T - B) / sc;
    }
    auto px = [&](double x) { return L + (x - x0) * sx; };
    auto py = [&](double y) { return H - B - (y - y0) * sy; };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
      << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << ' ' << H
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" "
         "font-size=\"15\">" << Escape(title_) << "</text>\n";
    o << "<rect class=\"frame\" x=\"" << L << "\" y=\"" << T << "\" width=\""
      << W - L - R << "\" height=\"" << H - T - B
      << "\" fill=\"none\" stroke=\"#444\"/>\n";
    for (double t : Ticks(x0, x1)) {
      o << "<line x1=\"" << Num(px(t), 6) << "\" y1=\"" << H - B << "\" x2=\""
        << Num(px(t), 6) << "\" y2=\"" << H - B + 5 << "\" stroke=\"#444\"/>"
        << "<text x=\"" << Num(px(t), 6) << "\" y=\"" << H - B + 18
        << "\" text-anchor=\"middle\">" << Num(t, 6) << "</text>\n";
    }
    for (double t : Ticks(y0, y1)) {
      o << "<line x1=\"" << L - 5 << "\" y1=\"" << Num(py(t), 6) << "\" x2=\""
        << L << "\" y2=\"" << Num(py(t), 6) << "\" stroke=\"#444\"/>"
        << "<text x=\"" << L - 8 << "\" y=\"" << Num(py(t) + 4, 6)
        << "\" text-anchor=\"end\">" << Num(t, 6) << "</text>\n";
    }
    o << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 10
      << "\" text-anchor=\"middle\">" << Escape(xlabel_) << "</text>\n";
    o << "<text transform=\"translate(16," << (T + H - B) / 2
      << ") rotate(-90)\" text-anchor=\"middle\">" << Escape(ylabel_)
      << "</text>\n";
    o << "<clipPath id=\"plot\"><rect x=\"" << L << "\" y=\"" << T
      << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
      << "\"/></clipPath>\n<g clip-path=\"url(#plot)\">\n";
    for (const Item& it : items_) {
      o << (it.closed ? "<polygon" : "<polyline") << " class=\"" << it.cls
        << "\" fill=\"" << (it.closed ? it.color + "\" fill-opacity=\"0.25"
                                      : std::string("none"))
        << "\" stroke=\"" << it.color << "\" stroke-width=\"" << it.width
        << '"';
      if (!it.dash.empty()) o << " stroke-dasharray=\"" << it.dash << '"';
      o << " points=\"";
      for (std::size_t i = 0; i < it.x.size(); ++i) {
        if (i) o << ' ';
        o << Num(px(it.x[i]), 7) << ',' << Num(py(it.y[i]), 7);
      }
      o << "\"/>\n";
    }
    for (const HLineItem& h : hlines_) {
      o << "<line class=\"" << h.cls << "\" x1=\"" << L << "\" y1=\""
        << Num(py(h.y), 7) << "\" x2=\"" << W - R << "\" y2=\""
        << Num(py(h.y), 7) << "\" stroke=\"" << h.color
        << "\" stroke-dasharray=\"" << h.dash << "\"/>\n";
    }
    o << "</g>\n</svg>\n";
    return o.str();
  }

 private:
  struct Item {
    std::vector<double> x, y;
    std::string color, cls, dash;
    double width;
    bool closed;
  };
  struct HLineItem {
    double y;
    std::string color, cls, dash;
  };

  void Extend(const std::vector<double>& x, const std::vector<double>& y) {
    for (double v : x) {
      if (std::isfinite(v)) { xmin_ = std::min(xmin_, v); xmax_ = std::max(xmax_, v); }
    }
    for (double v : y) {
      if (std::isfinite(v)) { ymin_ = std::min(ymin_, v); ymax_ = std::max(ymax_, v); }
    }
  }

  static std::vector<double> Ticks(double lo, double hi) {
    const double raw = (hi - lo) / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
      if (m * mag >= raw) { step = m * mag; break; }
    }
    std::vector<double> t;
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * step; v += step) {
      t.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
    }
    return t;
  }

  std::string title_, xlabel_, ylabel_;
  bool equal_;
  std::vector<Item> items_;
  std::vector<HLineItem> hlines_;
  double xmin_ = std::numeric_limits<double>::infinity();
  double xmax_ = -std::numeric_limits<double>::infinity();
  double ymin_ = std::numeric_limits<double>::infinity();
  double ymax_ = -std::numeric_limits<double>::infinity();
};

// Outline of an (s, e_y) rectangle mapped to the global frame.
inline void EnvelopeOutline(const RoadCenterline& cl, const ObstacleEnvelope& e,
                            std::vector<double>& x, std::vector<double>& y) {
  constexpr int kSteps = 16;
  auto add = [&](double s, double ey) {
    const Vec2 g = FrenetToGlobal(cl, std::clamp(s, cl.s_begin(), cl.s_end()), ey);
    x.push_back(g.x());
    y.push_back(g.y());
  };
  for (int i = 0; i <= kSteps; ++i) add(e.s_begin + (e.s_end - e.s_begin) * i / kSteps, e.e_y_low);
  for (int i = kSteps; i >= 0; --i) add(e.s_begin + (e.s_end - e.s_begin) * i / kSteps, e.e_y_high);
}

}  // namespace detail

inline std::string TrajectoryCsv(const PlanResult& r) {
  std::ostringstream o;
  o << "s,e_psi,e_y,delta,x,y,eta,kappa,v_max_fric\n";
  for (const StationRow& row : r.rows) {
    o << detail::Num(row.s, 12) << ',' << detail::Num(row.e_psi, 12) << ','
      << detail::Num(row.e_y, 12) << ',' << detail::Num(row.delta, 12) << ','
      << detail::Num(row.x, 12) << ',' << detail::Num(row.y, 12) << ','
      << detail::Num(row.eta, 12) << ',' << detail::Num(row.kappa, 12) << ','
      << detail::Num(row.v_max, 12) << '\n';
  }
  return o.str();
}

inline std::string GlobalSvg(const PlanResult& r) {
  using detail::SvgPlot;
  SvgPlot plot(std::string("Global trajectory (") + ToString(r.method) + ")",
               "x [m]", "y [m]", true);
  const RoadCenterline& cl = r.centerline;
  const double s0 = r.rows.front().s, s1 = r.rows.back().s;
  std::vector<double> lx, ly, rx, ry;
  constexpr int kRoad = 200;
  for (int i = 0; i <= kRoad; ++i) {
    const double s = s0 + (s1 - s0) * i / kRoad;
    const double hw = r.road.At(s);
    const Vec2 a = FrenetToGlobal(cl, s, hw), b = FrenetToGlobal(cl, s, -hw);
    lx.push_back(a.x()); ly.push_back(a.y());
    rx.push_back(b.x()); ry.push_back(b.y());
  }
  plot.Line(lx, ly, "#555", "road-edge");
  plot.Line(rx, ry, "#555", "road-edge");
  for (const auto& e : r.envelopes) {
    std::vector<double> x, y;
    detail::EnvelopeOutline(cl, e, x, y);
    plot.Polygon(x, y, "#c0392b", "obstacle");
  }
  if (!r.footprint) {
    for (const auto& e : r.planning_envelopes) {
      std::vector<double> x, y;
      detail::EnvelopeOutline(cl, e, x, y);
      plot.Polygon(x, y, "#e67e22", "obstacle-inflated", "4 3");
    }
  }
  // Vehicle rectangles at about twenty stations.
  const std::size_t stride = std::max<std::size_t>(1, r.rows.size() / 20);
  const VehicleParams& p = r.vehicle;
  for (std::size_t j = 0; j < r.rows.size(); j += stride) {
    const double psi = r.global_heading[j];
    const double c = std::cos(psi), s = std::sin(psi);
    std::vector<double> x, y;
    const double lon[4] = {p.b, -p.a, -p.a, p.b};
    const double lat[4] = {p.w, p.w, -p.w, -p.w};
    for (int k = 0; k < 4; ++k) {
      x.push_back(r.rows[j].x + lon[k] * c - lat[k] * s);
      y.push_back(r.rows[j].y + lon[k] * s + lat[k] * c);
    }
    plot.Polygon(x, y, "#2c7fb8", "footprint");
  }
  std::vector<double> tx, ty;
  if (!r.dense_x.empty()) {
    tx = r.dense_x;
    ty = r.dense_y;
  } else {
    for (const auto& row : r.rows) { tx.push_back(row.x); ty.push_back(row.y); }
  }
  plot.Line(tx, ty, "#08519c", "trajectory", "", 2.0);
  return plot.Render();
}

inline std::string FrenetSvg(const PlanResult& r) {
  using detail::SvgPlot;
  SvgPlot plot(std::string("Road-aligned trajectory (") + ToString(r.method) + ")",
               "s [m]", "e_y [m]");
  const double s0 = r.rows.front().s, s1 = r.rows.back().s;
  if (r.corridor) {
    std::vector<double> xs{s0};
    for (double b : r.corridor->breakpoints()) {
      if (b > s0 && b < s1) { xs.push_back(b); xs.push_back(b); }
    }
    xs.push_back(s1);
    std::vector<double> lo, up;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      // Step plot: evaluate just inside each piece.
      const double probe = i % 2 == 0 ? xs[i] + 1e-6 : xs[i] - 1e-6;
      lo.push_back(r.corridor->LowerAt(probe));
      up.push_back(r.corridor->UpperAt(probe));
    }
    plot.Line(xs, lo, "#555", "corridor-lower", "6 3");
    plot.Line(xs, up, "#555", "corridor-upper", "6 3");
  }
  for (const auto& e : r.envelopes) {
    plot.Polygon({e.s_begin, e.s_end, e.s_end, e.s_begin},
                 {e.e_y_low, e.e_y_low, e.e_y_high, e.e_y_high}, "#c0392b",
                 "obstacle");
  }
  std::vector<double> s, e;
  for (const auto& row : r.rows) { s.push_back(row.s); e.push_back(row.e_y); }
  plot.Line(s, e, "#08519c", "trajectory", "", 2.0);
  return plot.Render();
}

inline std::string SteeringSvg(const PlanResult& r) {
  using detail::SvgPlot;
  SvgPlot plot(std::string("Steering (") + ToString(r.method) + ")", "eta [m]",
               "delta [deg]");
  std::vector<double> eta, d;
  if (!r.dense_eta.empty()) {
    eta = r.dense_eta;
    for (double v : r.dense_delta) d.push_back(v / kDegToRad);
  } else {
    for (const auto& row : r.rows) {
      eta.push_back(row.eta);
      d.push_back(row.delta / kDegToRad);
    }
  }
  plot.Line(eta, d, "#08519c", "steering", "", 2.0);
  const double lim = r.vehicle.delta_max / kDegToRad;
  plot.HLine(lim, "#c0392b", "actuator-limit", "6 4");
  plot.HLine(-lim, "#c0392b", "actuator-limit", "6 4");
  return plot.Render();
}

inline std::string SpeedSvg(const PlanResult& r) {
  using detail::SvgPlot;
  SvgPlot plot(std::string("Friction speed bound (") + ToString(r.method) + ")",
               "eta [m]", "v_max,fric [km/h]");
  std::vector<double> eta, v;
  if (!r.dense_eta.empty()) {
    eta = r.dense_eta;
    for (double x : r.dense_v) v.push_back(3.6 * x);
  } else {
    for (const auto& row : r.rows) {
      eta.push_back(row.eta);
      v.push_back(3.6 * row.v_max);
    }
  }
  plot.Line(eta, v, "#08519c", "speed-bound", "", 2.0);
  return plot.Render();
}

inline std::string SummaryJson(const PlanResult& r) {
  nlohmann::ordered_json j;
  j["scenario"] = r.scenario;
  j["method"] = ToString(r.method);
  j["converged"] = r.converged;
  j["termination"] = r.termination;
  j["iterations"] = r.iterations;
  j["stations"] = r.rows.size();
  j["objective"] = r.objective;
  j["t_u"] = r.t_u;
  j["t_du"] = r.t_du;
  j["slack"] = {{"sigma", r.sigma},
                {"sigma_epsi_N", r.sigma_epsi_N},
                {"sigma_ey_N", r.sigma_ey_N}};
  j["T_s"] = r.T_s;
  j["max_abs_delta_deg"] = r.max_abs_delta / kDegToRad;
  j["max_delta_step_deg"] = r.max_delta_step / kDegToRad;
  j["v_min_fric_mps"] = r.v_min;
  j["v_min_fric_kmh"] = 3.6 * r.v_min;
  j["eta_at_v_min"] = r.eta_at_v_min;
  if (r.method == Method::kCpp) j["merged_waypoints"] = r.merged_waypoints;
  nlohmann::ordered_json its = nlohmann::ordered_json::array();
  for (const auto& d : r.diagnostics) {
    nlohmann::ordered_json it;
    it["iteration"] = d.iteration;
    it["objective"] = d.objective;
    it["max_slack"] = d.max_slack;
    it["pivots"] = d.pivots;
    it["warm_started"] = d.warm_started;
    it["lp_rows"] = d.lp_rows;
    it["lp_vars"] = d.lp_vars;
    it["model_defect"] = std::isfinite(d.model_defect) ? d.model_defect : -1.0;
    it["max_violation"] = d.check.max_violation;
    it["passed"] = d.check.passed();
    it["reasons"] = d.check.reasons;
    its.push_back(it);
  }
  j["per_iteration"] = its;
  return j.dump(2) + "\n";
}

struct ReportFiles {
  std::filesystem::path csv, global_svg, frenet_svg, steering_svg, speed_svg,
      summary;
};

inline ReportFiles EmitReport(const PlanResult& r,
                              const std::filesystem::path& out_dir) {
  if (r.rows.empty()) throw Error(ErrorKind::kEmptyResult, "plan has no stations");
  for (const auto& row : r.rows) {
    for (double v : {row.s, row.e_psi, row.e_y, row.delta, row.x, row.y,
                     row.eta, row.kappa, row.v_max}) {
      if (!std::isfinite(v)) {
        throw Error(ErrorKind::kInvalidInput, "plan contains non-finite values");
      }
    }
  }
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorKind::kIo, "cannot create " + out_dir.string());
  const std::string m = ToString(r.method);
  ReportFiles f{out_dir / (m + "_trajectory.csv"), out_dir / (m + "_global.svg"),
                out_dir / (m + "_frenet.svg"),     out_dir / (m + "_steering.svg"),
                out_dir / (m + "_speed.svg"),      out_dir / (m + "_summary.json")};
  auto write = [](const std::filesystem::path& p, const std::string& text) {
    std::ofstream o(p, std::ios::binary);
    if (!o) throw Error(ErrorKind::kIo, "cannot write " + p.string());
    o << text;
    if (!o) throw Error(ErrorKind::kIo, "write failed for " + p.string());
  };
  write(f.csv, TrajectoryCsv(r));
  write(f.global_svg, GlobalSvg(r));
  write(f.frenet_svg, FrenetSvg(r));
  write(f.steering_svg, SteeringSvg(r));
  write(f.speed_svg, SpeedSvg(r));
  write(f.summary, SummaryJson(r));
  return f;
}

}  // namespace slpplan

#endif  // SLPPLAN_REPORT_HPP_
