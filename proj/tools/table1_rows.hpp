// Copyright 2026 The lossjm Authors
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

#ifndef LOSSJM_TOOLS_TABLE1_ROWS_HPP
#define LOSSJM_TOOLS_TABLE1_ROWS_HPP

#include <array>
#include <optional>

namespace lossjm::tools {

/// Row n: a family of n + 1 displaced on-off measurements with amplitude r,
/// incompatible above tau_min = 1/n + epsilon.
struct Table1Row {
  int n;
  double r;
  double epsilon;

  double tau_min() const { return 1.0 / n + epsilon; }
};

inline constexpr std::array<Table1Row, 9> kTable1Rows{{
    {2, 0.005, 0.00005},
    {3, 0.010, 0.00018},
    {4, 0.065, 0.00118},
    {5, 0.045, 0.00135},
    {6, 0.035, 0.00100},
    {7, 0.025, 0.00055},
    {8, 0.015, 0.00015},
    {9, 0.010, 0.00010},
    {10, 0.005, 0.00005},
}};

inline std::optional<Table1Row> table1_row(int n) {
  for (const auto& row : kTable1Rows)
    if (row.n == n) return row;
  return std::nullopt;
}

}  // namespace lossjm::tools

#endif  // LOSSJM_TOOLS_TABLE1_ROWS_HPP
