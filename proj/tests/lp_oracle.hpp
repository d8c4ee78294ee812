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

#ifndef SLPPLAN_TESTS_LP_ORACLE_HPP_
#define SLPPLAN_TESTS_LP_ORACLE_HPP_

#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "slpplan/linear_program.hpp"

namespace slpplan::testing {

// Brute-force optimum of a bounded LP: every basic solution is obtained by
// making n of the constraints (rows and finite bounds) active.
inline std::optional<double> VertexEnumerationOptimum(const LinearProgram& lp) {
  const int n = static_cast<int>(lp.num_vars());
  std::vector<Eigen::VectorXd> a;
  std::vector<double> b;
  auto dense = [&](const SparseRow& r) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    for (std::size_t k = 0; k < r.cols.size(); ++k) v(r.cols[k]) += r.vals[k];
    return v;
  };
  const int n_eq = static_cast<int>(lp.num_eq());
  for (std::size_t i = 0; i < lp.num_eq(); ++i) {
    a.push_back(dense(lp.eq_rows()[i]));
    b.push_back(lp.eq_rhs()[i]);
  }
  for (std::size_t i = 0; i < lp.num_in(); ++i) {
    a.push_back(dense(lp.in_rows()[i]));
    b.push_back(lp.in_rhs()[i]);
  }
  for (int j = 0; j < n; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    for (double bound : {lp.lower()[ju], lp.upper()[ju]}) {
      if (!std::isfinite(bound)) continue;
      Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
      e(j) = 1.0;
      a.push_back(e);
      b.push_back(bound);
    }
  }
  const int total = static_cast<int>(a.size());
  std::optional<double> best;
  // Equalities are always active.
  if (n_eq > n) return std::nullopt;
  std::vector<int> idx;
  for (int i = 0; i < n_eq; ++i) idx.push_back(i);
  const int choose = n - n_eq;
  std::vector<int> comb(static_cast<std::size_t>(choose));
  for (int i = 0; i < choose; ++i) comb[static_cast<std::size_t>(i)] = n_eq + i;
  auto evaluate = [&]() {
    Eigen::MatrixXd M(n, n);
    Eigen::VectorXd rhs(n);
    int r = 0;
    for (int i : idx) {
      M.row(r) = a[static_cast<std::size_t>(i)].transpose();
      rhs(r++) = b[static_cast<std::size_t>(i)];
    }
    for (int i : comb) {
      M.row(r) = a[static_cast<std::size_t>(i)].transpose();
      rhs(r++) = b[static_cast<std::size_t>(i)];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    if (lu.rank() < n) return;
    const Eigen::VectorXd x = lu.solve(rhs);
    std::vector<double> xv(x.data(), x.data() + n);
    if (lp.MaxViolation(xv) > 1e-9) return;
    const double obj = lp.Objective(xv);
    if (!best || obj < *best) best = obj;
  };
  if (choose == 0) {
    evaluate();
    return best;
  }
  if (choose > total - n_eq) return std::nullopt;
  while (true) {
    evaluate();
    int i = choose - 1;
    while (i >= 0 && comb[static_cast<std::size_t>(i)] == total - choose + i) --i;
    if (i < 0) break;
    ++comb[static_cast<std::size_t>(i)];
    for (int k = i + 1; k < choose; ++k) {
      comb[static_cast<std::size_t>(k)] = comb[static_cast<std::size_t>(k - 1)] + 1;
    }
  }
  return best;
}

// Random LP with box-bounded variables and inequality rows that keep a
// random interior point feasible.
inline LinearProgram RandomBoundedLp(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nvars(1, 6);
  std::uniform_int_distribution<int> nrows(0, 8);
  std::uniform_real_distribution<double> coef(-5.0, 5.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  LinearProgram lp;
  const int n = nvars(rng);
  std::vector<double> x0;
  for (int j = 0; j < n; ++j) {
    const double lo = coef(rng);
    const double hi = lo + 0.5 + 4.0 * unit(rng);
    lp.AddVariable("x" + std::to_string(j), lo, hi, coef(rng));
    x0.push_back(lo + (hi - lo) * unit(rng));
  }
  const int m = nrows(rng);
  for (int i = 0; i < m; ++i) {
    SparseRow row;
    for (int j = 0; j < n; ++j) {
      // Some structural zeros.
      if (unit(rng) < 0.25) continue;
      row.Add(j, coef(rng));
    }
    const double rhs = row.Dot(x0) + 2.0 * unit(rng);
    lp.AddLessEqual(row, rhs);
  }
  return lp;
}

}  // namespace slpplan::testing

#endif  // SLPPLAN_TESTS_LP_ORACLE_HPP_
