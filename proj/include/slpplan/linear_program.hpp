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

#ifndef SLPPLAN_LINEAR_PROGRAM_HPP_
#define SLPPLAN_LINEAR_PROGRAM_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "slpplan/error.hpp"

namespace slpplan {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct SparseRow {
  std::vector<int> cols;
  std::vector<double> vals;

  SparseRow& Add(int col, double val) {
    cols.push_back(col);
    vals.push_back(val);
    return *this;
  }
  double Dot(const std::vector<double>& x) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      acc += vals[i] * x[static_cast<std::size_t>(cols[i])];
    }
    return acc;
  }
};

// min c'x  s.t.  A_eq x = b_eq,  A_in x <= b_in,  lower <= x <= upper.
class LinearProgram {
 public:
  int AddVariable(std::string name, double lower, double upper,
                  double cost = 0.0) {
    if (index_.contains(name)) {
      throw Error(ErrorKind::kInvalidInput, "duplicate variable " + name);
    }
    if (lower > upper) {
      throw Error(ErrorKind::kInvalidInput, "empty bounds for " + name);
    }
    const int idx = static_cast<int>(names_.size());
    index_.emplace(name, idx);
    names_.push_back(std::move(name));
    lower_.push_back(lower);
    upper_.push_back(upper);
    cost_.push_back(cost);
    return idx;
  }

  void AddEquality(SparseRow row, double rhs) {
    Check(row);
    eq_rows_.push_back(std::move(row));
    eq_rhs_.push_back(rhs);
  }
  // `key` identifies the row across structurally similar programs.
  void AddLessEqual(SparseRow row, double rhs, std::int64_t key = -1) {
    Check(row);
    in_rows_.push_back(std::move(row));
    in_rhs_.push_back(rhs);
    in_keys_.push_back(key);
  }
  void AddGreaterEqual(SparseRow row, double rhs, std::int64_t key = -1) {
    for (double& v : row.vals) v = -v;
    AddLessEqual(std::move(row), -rhs, key);
  }

  void set_cost(int var, double c) { cost_[static_cast<std::size_t>(var)] = c; }

  std::size_t num_vars() const { return names_.size(); }
  std::size_t num_eq() const { return eq_rows_.size(); }
  std::size_t num_in() const { return in_rows_.size(); }

  const std::vector<double>& cost() const { return cost_; }
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }
  const std::vector<SparseRow>& eq_rows() const { return eq_rows_; }
  const std::vector<double>& eq_rhs() const { return eq_rhs_; }
  const std::vector<SparseRow>& in_rows() const { return in_rows_; }
  const std::vector<double>& in_rhs() const { return in_rhs_; }
  const std::vector<std::int64_t>& in_keys() const { return in_keys_; }
  const std::vector<std::string>& names() const { return names_; }

  int Index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) {
      throw Error(ErrorKind::kInvalidInput, "unknown variable " + name);
    }
    return it->second;
  }

  double Objective(const std::vector<double>& x) const {
    double acc = 0.0;
    for (std::size_t j = 0; j < cost_.size(); ++j) acc += cost_[j] * x[j];
    return acc;
  }

  // Largest violation of any row or bound at x.
  double MaxViolation(const std::vector<double>& x) const {
    double worst = 0.0;
    for (std::size_t i = 0; i < eq_rows_.size(); ++i) {
      worst = std::max(worst, std::abs(eq_rows_[i].Dot(x) - eq_rhs_[i]));
    }
    for (std::size_t i = 0; i < in_rows_.size(); ++i) {
      worst = std::max(worst, in_rows_[i].Dot(x) - in_rhs_[i]);
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
      worst = std::max({worst, lower_[j] - x[j], x[j] - upper_[j]});
    }
    return worst;
  }

  // CPLEX LP text format, for cross-checking with external solvers.
  void WriteLpFormat(std::ostream& os) const;

 private:
  void Check(const SparseRow& row) const {
    if (row.cols.size() != row.vals.size()) {
      throw Error(ErrorKind::kDimensionMismatch, "row cols/vals length");
    }
    for (int c : row.cols) {
      if (c < 0 || static_cast<std::size_t>(c) >= names_.size()) {
        throw Error(ErrorKind::kDimensionMismatch,
                    "row references unknown column " + std::to_string(c));
      }
    }
  }

  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
  std::vector<double> cost_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<SparseRow> eq_rows_;
  std::vector<double> eq_rhs_;
  std::vector<SparseRow> in_rows_;
  std::vector<double> in_rhs_;
  std::vector<std::int64_t> in_keys_;
};

inline void LinearProgram::WriteLpFormat(std::ostream& os) const {
  auto sanitize = [](std::string s) {
    for (char& c : s) {
      if (c == '[' || c == ']' || c == ',') c = '_';
    }
    return s;
  };
  auto term = [&](double v, int col) {
    os << (v < 0 ? " - " : " + ") << std::abs(v) << ' '
       << sanitize(names_[static_cast<std::size_t>(col)]);
  };
  os.precision(17);
  os << "Minimize\n obj:";
  bool any = false;
  for (std::size_t j = 0; j < cost_.size(); ++j) {
    if (cost_[j] != 0.0) {
      term(cost_[j], static_cast<int>(j));
      any = true;
    }
  }
  if (!any) os << " 0 " << sanitize(names_.front());
  os << "\nSubject To\n";
  for (std::size_t i = 0; i < eq_rows_.size(); ++i) {
    os << " e" << i << ':';
    for (std::size_t k = 0; k < eq_rows_[i].cols.size(); ++k) {
      term(eq_rows_[i].vals[k], eq_rows_[i].cols[k]);
    }
    os << " = " << eq_rhs_[i] << '\n';
  }
  for (std::size_t i = 0; i < in_rows_.size(); ++i) {
    os << " i" << i << ':';
    for (std::size_t k = 0; k < in_rows_[i].cols.size(); ++k) {
      term(in_rows_[i].vals[k], in_rows_[i].cols[k]);
    }
    os << " <= " << in_rhs_[i] << '\n';
  }
  os << "Bounds\n";
  for (std::size_t j = 0; j < names_.size(); ++j) {
    const std::string n = sanitize(names_[j]);
    if (std::isinf(lower_[j]) && std::isinf(upper_[j])) {
      os << ' ' << n << " free\n";
    } else {
      os << ' ';
      if (std::isinf(lower_[j])) os << "-inf"; else os << lower_[j];
      os << " <= " << n << " <= ";
      if (std::isinf(upper_[j])) os << "+inf"; else os << upper_[j];
      os << '\n';
    }
  }
  os << "End\n";
}

}  // namespace slpplan

#endif  // SLPPLAN_LINEAR_PROGRAM_HPP_
