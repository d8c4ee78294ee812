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

// plan <scenario-file> --method {slp|slpp|cpp} --out <dir>
//      [--iters K] [--grid N] [--no-footprint]
//
// Exit status: 0 success, 2 plan needed large slack (infeasible corridor),
// 1 any error. SLPPLAN_LOG=quiet|info|debug sets stderr verbosity.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "slpplan/planner.hpp"
#include "slpplan/report.hpp"
#include "slpplan/scenario.hpp"

namespace {

enum class LogLevel { kQuiet = 0, kInfo = 1, kDebug = 2 };

LogLevel LevelFromEnv() {
  const char* v = std::getenv("SLPPLAN_LOG");
  if (v == nullptr) return LogLevel::kInfo;
  const std::string s = v;
  if (s == "quiet" || s == "0") return LogLevel::kQuiet;
  if (s == "debug" || s == "2") return LogLevel::kDebug;
  return LogLevel::kInfo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trajectory planning by sequential linear programming"};
  std::string scenario_path;
  std::string method = "slp";
  std::string out_dir;
  int iters = 0;
  int grid = 0;
  bool no_footprint = false;
  app.add_option("scenario", scenario_path, "Scenario file (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--method", method, "Planner")
      ->check(CLI::IsMember({"slp", "slpp", "cpp"}));
  app.add_option("--out", out_dir, "Output directory")->required();
  app.add_option("--iters", iters, "SLP iteration cap")
      ->check(CLI::PositiveNumber);
  app.add_option("--grid", grid, "Grid intervals N")->check(CLI::Range(2, 100000));
  app.add_flag("--no-footprint", no_footprint,
               "Point-mass corridor with inflated obstacles");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const LogLevel level = LevelFromEnv();
  auto log = [&](LogLevel at, const std::string& msg) {
    if (static_cast<int>(level) >= static_cast<int>(at)) {
      std::cerr << msg << '\n';
    }
  };

  try {
    slpplan::Scenario sc = slpplan::LoadScenario(scenario_path);
    if (iters > 0) sc.settings.I_max = iters;
    if (grid > 0) sc.settings.N = static_cast<std::size_t>(grid);
    if (no_footprint) sc.settings.footprint_enabled = false;
    const slpplan::PlanningProblem prob = slpplan::ToProblem(sc);
    log(LogLevel::kInfo, "scenario '" + sc.name + "', method " + method);

    slpplan::PlanResult res = slpplan::Plan(prob, slpplan::ParseMethod(method));
    res.scenario = sc.name;
    for (const auto& d : res.diagnostics) {
      log(LogLevel::kDebug,
          "  iteration " + std::to_string(d.iteration) + ": objective " +
              std::to_string(d.objective) + ", pivots " +
              std::to_string(d.pivots) + (d.warm_started ? " (warm)" : "") +
              ", max slack " + std::to_string(d.max_slack) +
              (d.check.passed() ? ", check passed" : ", check failed"));
      for (const auto& why : d.check.reasons) log(LogLevel::kDebug, "    " + why);
    }
    const auto files = slpplan::EmitReport(res, out_dir);
    log(LogLevel::kInfo,
        std::string(res.converged ? "converged" : "not converged") + " after " +
            std::to_string(res.iterations) + " iteration(s); max |delta| " +
            std::to_string(res.max_abs_delta / slpplan::kDegToRad) +
            " deg; min v_max,fric " + std::to_string(3.6 * res.v_min) +
            " km/h");
    log(LogLevel::kInfo, "wrote " + files.csv.string() + " and plots");
    if (res.MaxSlack() > sc.settings.slack_tol) {
      log(LogLevel::kQuiet, "plan infeasible: slack " +
                                std::to_string(res.MaxSlack()) +
                                " exceeds tolerance");
      return 2;
    }
    return 0;
  } catch (const slpplan::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
