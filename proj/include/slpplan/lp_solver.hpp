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

// Two-phase primal simplex on a dense, compact tableau.
//
// Every row i of the program gets a logical variable r_i = a_i x, so the
// constraint system is homogeneous and all restrictions become variable
// bounds: equality logicals are fixed at b_i, inequality logicals live in
// (-inf, b_i]. Only the nonbasic columns are stored (m x k); fixed nonbasic
// variables are folded into a constant column and dropped, which after the
// dynamics rows have been eliminated leaves a tableau of width about the
// number of free decisions.
//
// Phase 1 minimizes the sum of bound violations of the basic variables,
// phase 2 the objective. Pricing is Dantzig with a Harris two-pass ratio
// test; after a configurable number of pivots Bland's rule takes over to
// rule out cycling. Basic values are periodically recomputed from the
// original rows with a dense LU of the structural part of the basis.

#ifndef SLPPLAN_LP_SOLVER_HPP_
#define SLPPLAN_LP_SOLVER_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "slpplan/error.hpp"
#include "slpplan/linear_program.hpp"

namespace slpplan {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kNumericalBreakdown };

inline const char* ToString(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kNumericalBreakdown: return "numerical breakdown";
  }
  return "unknown";
}

struct SimplexOptions {
  double feasibility_tol = 1e-7;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-10;
  // Dantzig pivots before switching to Bland's rule; negative selects
  // 5 * (m + n).
  long bland_after = -1;
  // Hard cap on pivots; negative selects 50 * (m + n) + 10000.
  long max_pivots = -1;
  int refresh_every = 500;
};

// Variable indices: [0, n) structural, n + i for the logical of row i where
// equality rows come first, then inequality rows.
struct Basis {
  std::vector<int> basic;
  std::vector<int> at_upper;
  // Nonbasic variables resting strictly inside their bounds.
  std::vector<std::pair<int, double>> interior;
};

struct LpSolution {
  LpStatus status = LpStatus::kNumericalBreakdown;
  std::vector<double> x;
  double objective = 0.0;
  long phase1_pivots = 0;
  long phase2_pivots = 0;
  // Crash and warm-start installation pivots, not counted as iterations.
  long setup_pivots = 0;
  bool warm_started = false;
  double max_violation = 0.0;
  Basis basis;
  std::string message;

  long pivots() const { return phase1_pivots + phase2_pivots; }
};

namespace detail {

class SimplexTableau {
 public:
  SimplexTableau(const LinearProgram& lp, const SimplexOptions& opt)
      : lp_(lp),
        opt_(opt),
        n_(lp.num_vars()),
        m_(lp.num_eq() + lp.num_in()),
        stride_(n_ + 1) {
    const std::size_t total = n_ + m_;
    lo_.resize(total);
    hi_.resize(total);
    cost_.assign(total, 0.0);
    for (std::size_t j = 0; j < n_; ++j) {
      lo_[j] = lp.lower()[j];
      hi_[j] = lp.upper()[j];
      cost_[j] = lp.cost()[j];
    }
    for (std::size_t i = 0; i < lp.num_eq(); ++i) {
      lo_[n_ + i] = hi_[n_ + i] = lp.eq_rhs()[i];
    }
    for (std::size_t i = 0; i < lp.num_in(); ++i) {
      lo_[n_ + lp.num_eq() + i] = -kInf;
      hi_[n_ + lp.num_eq() + i] = lp.in_rhs()[i];
    }
    Reset();
  }

  void Reset() {
    const std::size_t total = n_ + m_;
    T_.assign(m_ * stride_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      const SparseRow& row = Row(i);
      for (std::size_t k = 0; k < row.cols.size(); ++k) {
        T_[i * stride_ + static_cast<std::size_t>(row.cols[k])] += row.vals[k];
      }
    }
    basic_.resize(m_);
    row_of_.assign(total, -1);
    slot_of_.assign(total, -1);
    for (std::size_t i = 0; i < m_; ++i) {
      basic_[i] = static_cast<int>(n_ + i);
      row_of_[n_ + i] = static_cast<int>(i);
    }
    nonbasic_.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      nonbasic_[j] = static_cast<int>(j);
      slot_of_[j] = static_cast<int>(j);
    }
    width_ = n_;
    d_.assign(stride_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) d_[j] = cost_[j];
    x_.assign(total, 0.0);
    for (std::size_t j = 0; j < n_; ++j) x_[j] = std::clamp(0.0, lo_[j], hi_[j]);
    // Fixed structurals never move.
    for (std::size_t k = width_; k-- > 0;) {
      const auto v = static_cast<std::size_t>(nonbasic_[k]);
      if (lo_[v] == hi_[v]) RemoveSlot(k);
    }
    RecomputeBasics();
    setup_pivots_ = 0;
  }

  // Pivots free structurals into rows held by fixed logicals.
  bool CrashFreeVariables() {
    for (std::size_t v = 0; v < n_; ++v) {
      if (!(std::isinf(lo_[v]) && std::isinf(hi_[v]))) continue;
      if (slot_of_[v] < 0) continue;
      const auto q = static_cast<std::size_t>(slot_of_[v]);
      std::size_t best = m_;
      double best_abs = 1e-9;
      for (std::size_t r = 0; r < m_; ++r) {
        const auto b = static_cast<std::size_t>(basic_[r]);
        if (b < n_ || lo_[b] != hi_[b]) continue;
        const double a = std::abs(T_[r * stride_ + q]);
        if (a > best_abs) {
          best_abs = a;
          best = r;
        }
      }
      if (best == m_) continue;
      x_[static_cast<std::size_t>(basic_[best])] =
          lo_[static_cast<std::size_t>(basic_[best])];
      Pivot(best, q);
      ++setup_pivots_;
    }
    RecomputeBasics();
    return true;
  }

  // Installs a basis hint. Returns false if the hint is unusable.
  bool Install(const Basis& hint) {
    const std::size_t total = n_ + m_;
    std::vector<char> in_hint(total, 0);
    for (int v : hint.basic) {
      if (v < 0 || static_cast<std::size_t>(v) >= total) return false;
      if (in_hint[static_cast<std::size_t>(v)]) return false;
      in_hint[static_cast<std::size_t>(v)] = 1;
    }
    if (hint.basic.size() > m_) return false;
    for (int v : hint.at_upper) {
      if (v < 0 || static_cast<std::size_t>(v) >= total) return false;
    }
    for (const auto& [v, val] : hint.interior) {
      if (v < 0 || static_cast<std::size_t>(v) >= total) return false;
    }
    for (int v : hint.basic) {
      const auto vi = static_cast<std::size_t>(v);
      if (row_of_[vi] >= 0 || slot_of_[vi] < 0) continue;
      const auto q = static_cast<std::size_t>(slot_of_[vi]);
      std::size_t best = m_;
      double best_abs = 1e-7;
      for (std::size_t r = 0; r < m_; ++r) {
        if (in_hint[static_cast<std::size_t>(basic_[r])]) continue;
        const double a = std::abs(T_[r * stride_ + q]);
        if (a > best_abs) {
          best_abs = a;
          best = r;
        }
      }
      if (best == m_) return false;
      const auto leaving = static_cast<std::size_t>(basic_[best]);
      if (lo_[leaving] == hi_[leaving]) x_[leaving] = lo_[leaving];
      Pivot(best, q);
      ++setup_pivots_;
    }
    CrashFreeVariables();
    for (std::size_t k = 0; k < width_; ++k) {
      const auto v = static_cast<std::size_t>(nonbasic_[k]);
      x_[v] = std::isfinite(lo_[v]) ? lo_[v]
              : std::isfinite(hi_[v]) ? hi_[v]
                                      : 0.0;
    }
    for (int v : hint.at_upper) {
      const auto vi = static_cast<std::size_t>(v);
      if (slot_of_[vi] >= 0 && std::isfinite(hi_[vi])) x_[vi] = hi_[vi];
    }
    for (const auto& [v, val] : hint.interior) {
      const auto vi = static_cast<std::size_t>(v);
      if (slot_of_[vi] >= 0) x_[vi] = std::clamp(val, lo_[vi], hi_[vi]);
    }
    RecomputeBasics();
    return Refresh();
  }

  LpSolution Run() {
    LpSolution sol;
    const long mn = static_cast<long>(m_ + n_);
    bland_after_ = opt_.bland_after >= 0 ? opt_.bland_after : 5 * mn;
    max_pivots_ = opt_.max_pivots >= 0 ? opt_.max_pivots : 50 * mn + 10000;

    LpStatus status = LpStatus::kOptimal;
    for (int round = 0; round < 4; ++round) {
      status = Phase(true, sol.phase1_pivots);
      if (status != LpStatus::kOptimal) break;
      status = Phase(false, sol.phase2_pivots);
      if (status != LpStatus::kOptimal) break;
      if (!Refresh()) {
        status = LpStatus::kNumericalBreakdown;
        break;
      }
      if (MaxBasicInfeasibility() <= opt_.feasibility_tol) break;
    }
    sol.status = status;
    sol.setup_pivots = setup_pivots_;
    sol.x.assign(x_.begin(), x_.begin() + static_cast<long>(n_));
    sol.objective = lp_.Objective(sol.x);
    sol.max_violation = lp_.MaxViolation(sol.x);
    sol.message = message_;
    if (status == LpStatus::kOptimal &&
        sol.max_violation > 10.0 * opt_.feasibility_tol) {
      sol.status = LpStatus::kNumericalBreakdown;
      sol.message = "final residual " + std::to_string(sol.max_violation);
    }
    for (std::size_t r = 0; r < m_; ++r) sol.basis.basic.push_back(basic_[r]);
    for (std::size_t v = 0; v < n_ + m_; ++v) {
      if (row_of_[v] >= 0) continue;
      if (std::isfinite(hi_[v]) && x_[v] == hi_[v] && lo_[v] != hi_[v]) {
        sol.basis.at_upper.push_back(static_cast<int>(v));
      } else if (x_[v] != lo_[v] && x_[v] != hi_[v]) {
        sol.basis.interior.emplace_back(static_cast<int>(v), x_[v]);
      }
    }
    return sol;
  }

  long setup_pivots() const { return setup_pivots_; }

 private:
  const SparseRow& Row(std::size_t i) const {
    return i < lp_.num_eq() ? lp_.eq_rows()[i]
                            : lp_.in_rows()[i - lp_.num_eq()];
  }

  double* RowPtr(std::size_t r) { return T_.data() + r * stride_; }

  // Folds the nonbasic variable in slot q into the constant column and
  // removes the slot.
  void RemoveSlot(std::size_t q) {
    const auto v = static_cast<std::size_t>(nonbasic_[q]);
    const double val = x_[v];
    const std::size_t last = width_ - 1;
    const std::size_t rhs = stride_ - 1;
    for (std::size_t r = 0; r < m_; ++r) {
      double* row = RowPtr(r);
      row[rhs] += row[q] * val;
      row[q] = row[last];
      row[last] = 0.0;
    }
    d_[rhs] += d_[q] * val;
    d_[q] = d_[last];
    d_[last] = 0.0;
    nonbasic_[q] = nonbasic_[last];
    slot_of_[static_cast<std::size_t>(nonbasic_[q])] = static_cast<int>(q);
    nonbasic_.pop_back();
    slot_of_[v] = -1;
    width_ = last;
  }

  void Pivot(std::size_t p, std::size_t q) {
    const std::size_t rhs = stride_ - 1;
    double* prow = RowPtr(p);
    const double piv = prow[q];
    const double inv = 1.0 / piv;
    for (std::size_t k = 0; k < width_; ++k) prow[k] = -prow[k] * inv;
    prow[rhs] = -prow[rhs] * inv;
    prow[q] = inv;
    auto update = [&](double* row) {
      const double f = row[q];
      if (f == 0.0) return;
      for (std::size_t k = 0; k < width_; ++k) row[k] += f * prow[k];
      row[rhs] += f * prow[rhs];
      row[q] = f * inv;
    };
    for (std::size_t r = 0; r < m_; ++r) {
      if (r != p) update(RowPtr(r));
    }
    update(d_.data());

    const int entering = nonbasic_[q];
    const int leaving = basic_[p];
    basic_[p] = entering;
    row_of_[static_cast<std::size_t>(entering)] = static_cast<int>(p);
    slot_of_[static_cast<std::size_t>(entering)] = -1;
    nonbasic_[q] = leaving;
    row_of_[static_cast<std::size_t>(leaving)] = -1;
    slot_of_[static_cast<std::size_t>(leaving)] = static_cast<int>(q);
    const auto lv = static_cast<std::size_t>(leaving);
    if (lo_[lv] == hi_[lv]) RemoveSlot(q);
  }

  void RecomputeBasics() {
    const std::size_t rhs = stride_ - 1;
    for (std::size_t r = 0; r < m_; ++r) {
      const double* row = RowPtr(r);
      double acc = row[rhs];
      for (std::size_t k = 0; k < width_; ++k) {
        acc += row[k] * x_[static_cast<std::size_t>(nonbasic_[k])];
      }
      x_[static_cast<std::size_t>(basic_[r])] = acc;
    }
  }

  // Recomputes basic values from the original rows. The rows whose logical
  // is nonbasic determine the basic structurals through a square system.
  bool Refresh() {
    std::vector<int> col_of(n_, -1);
    std::vector<std::size_t> basic_struct;
    for (std::size_t r = 0; r < m_; ++r) {
      const auto v = static_cast<std::size_t>(basic_[r]);
      if (v < n_) {
        col_of[v] = static_cast<int>(basic_struct.size());
        basic_struct.push_back(v);
      }
    }
    std::vector<std::size_t> tight_rows;
    for (std::size_t i = 0; i < m_; ++i) {
      if (row_of_[n_ + i] < 0) tight_rows.push_back(i);
    }
    const auto nb = static_cast<Eigen::Index>(basic_struct.size());
    if (static_cast<std::size_t>(nb) != tight_rows.size()) return false;
    if (nb > 0) {
      Eigen::MatrixXd M = Eigen::MatrixXd::Zero(nb, nb);
      Eigen::VectorXd rhs(nb);
      for (Eigen::Index i = 0; i < nb; ++i) {
        const std::size_t row = tight_rows[static_cast<std::size_t>(i)];
        const SparseRow& sr = Row(row);
        double b = x_[n_ + row];
        for (std::size_t k = 0; k < sr.cols.size(); ++k) {
          const auto c = static_cast<std::size_t>(sr.cols[k]);
          if (col_of[c] >= 0) {
            M(i, col_of[c]) += sr.vals[k];
          } else {
            b -= sr.vals[k] * x_[c];
          }
        }
        rhs(i) = b;
      }
      Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
      const Eigen::VectorXd sol = lu.solve(rhs);
      if (!sol.allFinite()) return false;
      if ((M * sol - rhs).lpNorm<Eigen::Infinity>() >
          1e-6 * (1.0 + rhs.lpNorm<Eigen::Infinity>())) {
        return false;
      }
      for (Eigen::Index i = 0; i < nb; ++i) {
        x_[basic_struct[static_cast<std::size_t>(i)]] = sol(i);
      }
    }
    for (std::size_t r = 0; r < m_; ++r) {
      const auto v = static_cast<std::size_t>(basic_[r]);
      if (v >= n_) x_[v] = Row(v - n_).Dot(x_);
    }
    return true;
  }

  double MaxBasicInfeasibility() const {
    double worst = 0.0;
    for (std::size_t r = 0; r < m_; ++r) {
      const auto v = static_cast<std::size_t>(basic_[r]);
      worst = std::max({worst, lo_[v] - x_[v], x_[v] - hi_[v]});
    }
    return worst;
  }

  // One simplex phase. Returns kOptimal when the phase objective cannot be
  // improved further, kInfeasible if phase 1 stalls with violations left.
  LpStatus Phase(bool phase1, long& pivots) {
    const double ftol = opt_.feasibility_tol;
    std::vector<double> d1;
    std::vector<double> weight(m_, 0.0);
    long since_refresh = 0;
    while (true) {
      if (total_pivots_ >= max_pivots_) {
        message_ = "pivot limit reached";
        return LpStatus::kNumericalBreakdown;
      }
      const bool bland = total_pivots_ >= bland_after_;
      const double* cost_row = d_.data();
      if (phase1) {
        bool any = false;
        for (std::size_t r = 0; r < m_; ++r) {
          const auto v = static_cast<std::size_t>(basic_[r]);
          weight[r] = x_[v] < lo_[v] - ftol   ? -1.0
                      : x_[v] > hi_[v] + ftol ? 1.0
                                              : 0.0;
          any = any || weight[r] != 0.0;
        }
        if (!any) return LpStatus::kOptimal;
        d1.assign(width_, 0.0);
        for (std::size_t r = 0; r < m_; ++r) {
          if (weight[r] == 0.0) continue;
          const double* row = RowPtr(r);
          const double w = weight[r];
          for (std::size_t k = 0; k < width_; ++k) d1[k] += w * row[k];
        }
        cost_row = d1.data();
      }

      // Pricing.
      std::size_t q = width_;
      double dir = 0.0;
      double best = 0.0;
      int best_var = std::numeric_limits<int>::max();
      for (std::size_t k = 0; k < width_; ++k) {
        const auto v = static_cast<std::size_t>(nonbasic_[k]);
        const double dk = cost_row[k];
        double dk_dir = 0.0;
        if (dk < -opt_.optimality_tol && x_[v] < hi_[v]) {
          dk_dir = 1.0;
        } else if (dk > opt_.optimality_tol && x_[v] > lo_[v]) {
          dk_dir = -1.0;
        } else {
          continue;
        }
        if (bland) {
          if (nonbasic_[k] < best_var) {
            best_var = nonbasic_[k];
            q = k;
            dir = dk_dir;
          }
        } else if (std::abs(dk) > best) {
          best = std::abs(dk);
          q = k;
          dir = dk_dir;
        }
      }
      if (q == width_) {
        if (phase1) {
          message_ = "phase 1 ended with infeasibility " +
                     std::to_string(MaxBasicInfeasibility());
          return LpStatus::kInfeasible;
        }
        return LpStatus::kOptimal;
      }

      // Ratio test.
      const auto ev = static_cast<std::size_t>(nonbasic_[q]);
      const double own = dir > 0 ? hi_[ev] - x_[ev] : x_[ev] - lo_[ev];
      double theta_max = kInf;
      for (std::size_t r = 0; r < m_; ++r) {
        const double alpha = RowPtr(r)[q] * dir;
        if (std::abs(alpha) <= opt_.pivot_tol) continue;
        double target;
        if (!Target(r, alpha, target)) continue;
        const double x = x_[static_cast<std::size_t>(basic_[r])];
        const double relaxed =
            (target + (alpha > 0 ? ftol : -ftol) - x) / alpha;
        theta_max = std::min(theta_max, relaxed);
      }
      std::size_t p = m_;
      double p_ratio = kInf;
      double p_target = 0.0;
      if (std::isfinite(theta_max)) {
        double p_alpha = 0.0;
        int p_var = std::numeric_limits<int>::max();
        double min_ratio = kInf;
        if (bland) {
          for (std::size_t r = 0; r < m_; ++r) {
            const double alpha = RowPtr(r)[q] * dir;
            if (std::abs(alpha) <= opt_.pivot_tol) continue;
            double target;
            if (!Target(r, alpha, target)) continue;
            const double ratio =
                (target - x_[static_cast<std::size_t>(basic_[r])]) / alpha;
            min_ratio = std::min(min_ratio, ratio);
          }
        }
        for (std::size_t r = 0; r < m_; ++r) {
          const double alpha = RowPtr(r)[q] * dir;
          if (std::abs(alpha) <= opt_.pivot_tol) continue;
          double target;
          if (!Target(r, alpha, target)) continue;
          const double ratio =
              (target - x_[static_cast<std::size_t>(basic_[r])]) / alpha;
          if (bland) {
            if (ratio <= min_ratio + 1e-12 && basic_[r] < p_var) {
              p_var = basic_[r];
              p = r;
              p_ratio = ratio;
              p_target = target;
            }
          } else if (ratio <= theta_max && std::abs(alpha) > p_alpha) {
            p_alpha = std::abs(alpha);
            p = r;
            p_ratio = ratio;
            p_target = target;
          }
        }
      }

      if (p == m_ && std::isinf(own)) {
        if (phase1) {
          message_ = "phase 1 direction without breakpoint";
          return LpStatus::kNumericalBreakdown;
        }
        return LpStatus::kUnbounded;
      }

      const bool flip = p == m_ || own <= std::max(p_ratio, 0.0);
      const double theta = flip ? own : std::max(p_ratio, 0.0);
      if (theta != 0.0) {
        x_[ev] += dir * theta;
        for (std::size_t r = 0; r < m_; ++r) {
          const double alpha = RowPtr(r)[q] * dir;
          if (alpha != 0.0) x_[static_cast<std::size_t>(basic_[r])] += alpha * theta;
        }
      }
      if (flip) {
        x_[ev] = dir > 0 ? hi_[ev] : lo_[ev];
      } else {
        if (std::abs(RowPtr(p)[q]) < opt_.pivot_tol) {
          message_ = "pivot element below tolerance";
          return LpStatus::kNumericalBreakdown;
        }
        x_[static_cast<std::size_t>(basic_[p])] = p_target;
        Pivot(p, q);
      }
      ++pivots;
      ++total_pivots_;
      if (++since_refresh >= opt_.refresh_every) {
        since_refresh = 0;
        if (!Refresh()) {
          message_ = "singular basis during refresh";
          return LpStatus::kNumericalBreakdown;
        }
      }
    }
  }

  // Bound that basic row r runs into when it changes with sign(alpha).
  // Infeasible basics stop at the bound they approach first.
  bool Target(std::size_t r, double alpha, double& target) const {
    const auto v = static_cast<std::size_t>(basic_[r]);
    const double x = x_[v];
    const double ftol = opt_.feasibility_tol;
    if (alpha > 0) {
      if (x < lo_[v] - ftol) {
        target = lo_[v];
        return true;
      }
      if (x > hi_[v] + ftol) return false;
      if (std::isfinite(hi_[v])) {
        target = hi_[v];
        return true;
      }
      return false;
    }
    if (x > hi_[v] + ftol) {
      target = hi_[v];
      return true;
    }
    if (x < lo_[v] - ftol) return false;
    if (std::isfinite(lo_[v])) {
      target = lo_[v];
      return true;
    }
    return false;
  }

  const LinearProgram& lp_;
  SimplexOptions opt_;
  std::size_t n_;
  std::size_t m_;
  std::size_t stride_;
  std::size_t width_ = 0;
  std::vector<double> T_;
  std::vector<double> d_;
  std::vector<double> lo_;
  std::vector<double> hi_;
  std::vector<double> cost_;
  std::vector<double> x_;
  std::vector<int> basic_;
  std::vector<int> nonbasic_;
  std::vector<int> row_of_;
  std::vector<int> slot_of_;
  long setup_pivots_ = 0;
  long total_pivots_ = 0;
  long bland_after_ = 0;
  long max_pivots_ = 0;
  std::string message_;
};

inline bool TriviallyInfeasible(const LinearProgram& lp, double tol,
                                std::string& why) {
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    if (lp.lower()[j] > lp.upper()[j]) {
      why = "empty bounds on " + lp.names()[j];
      return true;
    }
  }
  for (std::size_t i = 0; i < lp.num_eq(); ++i) {
    if (lp.eq_rows()[i].cols.empty() && std::abs(lp.eq_rhs()[i]) > tol) {
      why = "empty equality row with nonzero rhs";
      return true;
    }
  }
  for (std::size_t i = 0; i < lp.num_in(); ++i) {
    if (lp.in_rows()[i].cols.empty() && lp.in_rhs()[i] < -tol) {
      why = "empty inequality row with negative rhs";
      return true;
    }
  }
  return false;
}

}  // namespace detail

inline LpSolution Solve(const LinearProgram& lp,
                        const SimplexOptions& options = {}) {
  std::string why;
  if (detail::TriviallyInfeasible(lp, options.feasibility_tol, why)) {
    LpSolution sol;
    sol.status = LpStatus::kInfeasible;
    sol.x.assign(lp.num_vars(), 0.0);
    sol.message = why;
    return sol;
  }
  detail::SimplexTableau tab(lp, options);
  tab.CrashFreeVariables();
  return tab.Run();
}

// Starts from `hint` (typically the optimal basis of a structurally identical
// program). An unusable hint falls back to a cold start.
inline LpSolution WarmStartSolve(const LinearProgram& lp, const Basis& hint,
                                 const SimplexOptions& options = {}) {
  std::string why;
  if (detail::TriviallyInfeasible(lp, options.feasibility_tol, why)) {
    return Solve(lp, options);
  }
  detail::SimplexTableau tab(lp, options);
  if (!tab.Install(hint)) return Solve(lp, options);
  LpSolution sol = tab.Run();
  sol.warm_started = true;
  return sol;
}

// Translates a basis of `from` into the index space of `to`. Structurals are
// matched by name, equality rows by position, inequality rows by key.
inline Basis RemapBasis(const Basis& basis, const LinearProgram& from,
                        const LinearProgram& to) {
  const std::size_t n_from = from.num_vars();
  const std::size_t n_to = to.num_vars();
  std::unordered_map<std::int64_t, std::size_t> key_to_row;
  for (std::size_t i = 0; i < to.num_in(); ++i) {
    if (to.in_keys()[i] >= 0) key_to_row.emplace(to.in_keys()[i], i);
  }
  auto map = [&](int v) -> int {
    if (v < 0) return -1;
    const auto vi = static_cast<std::size_t>(v);
    if (vi < n_from) {
      const std::string& name = from.names()[vi];
      for (std::size_t j = (vi < n_to ? vi : 0); j < n_to; ++j) {
        if (to.names()[j] == name) return static_cast<int>(j);
      }
      for (std::size_t j = 0; j < std::min(vi, n_to); ++j) {
        if (to.names()[j] == name) return static_cast<int>(j);
      }
      return -1;
    }
    const std::size_t row = vi - n_from;
    if (row < from.num_eq()) {
      if (from.num_eq() != to.num_eq()) return -1;
      return static_cast<int>(n_to + row);
    }
    const std::size_t in_row = row - from.num_eq();
    if (in_row >= from.num_in()) return -1;
    const std::int64_t key = from.in_keys()[in_row];
    if (key < 0) return -1;
    auto it = key_to_row.find(key);
    if (it == key_to_row.end()) return -1;
    return static_cast<int>(n_to + to.num_eq() + it->second);
  };
  Basis out;
  for (int v : basis.basic) {
    const int w = map(v);
    if (w >= 0) out.basic.push_back(w);
  }
  // Rows without a counterpart start with their logical basic.
  std::vector<char> mapped(to.num_in(), 0);
  for (std::size_t i = 0; i < from.num_in(); ++i) {
    auto it = key_to_row.find(from.in_keys()[i]);
    if (from.in_keys()[i] >= 0 && it != key_to_row.end()) mapped[it->second] = 1;
  }
  for (std::size_t i = 0; i < to.num_in(); ++i) {
    if (mapped[i] || out.basic.size() >= to.num_eq() + to.num_in()) continue;
    out.basic.push_back(static_cast<int>(n_to + to.num_eq() + i));
  }
  for (int v : basis.at_upper) {
    const int w = map(v);
    if (w >= 0) out.at_upper.push_back(w);
  }
  for (const auto& [v, val] : basis.interior) {
    const int w = map(v);
    if (w >= 0) out.interior.emplace_back(w, val);
  }
  return out;
}

}  // namespace slpplan

#endif  // SLPPLAN_LP_SOLVER_HPP_
