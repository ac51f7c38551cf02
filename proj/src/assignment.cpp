// assignment.cpp

// Copyright 2026  The mtsim Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "mtsim/assignment.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace mtsim {

std::vector<size_t> min_cost_assignment(const CostMatrix &cost) {
  const size_t n = cost.size();
  for (const auto &row : cost)
    if (row.size() != n) throw std::invalid_argument("min_cost_assignment: matrix is not square");
  if (n == 0) return {};

  constexpr int64_t kInf = std::numeric_limits<int64_t>::max() / 4;
  // 1-based arrays; index 0 is the virtual row/column used while augmenting.
  std::vector<int64_t> u(n + 1, 0), v(n + 1, 0), minv(n + 1);
  std::vector<size_t> row_of_col(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);

  for (size_t i = 1; i <= n; ++i) {
    row_of_col[0] = i;
    size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    // Grow an alternating tree from row i until it reaches a free column.
    do {
      used[j0] = 1;
      const size_t i0 = row_of_col[j0];
      int64_t delta = kInf;
      size_t j1 = 0;
      for (size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const int64_t reduced = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (reduced < minv[j]) {
          minv[j] = reduced;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[row_of_col[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of_col[j0] != 0);
    // Flip the augmenting path.
    do {
      const size_t j1 = way[j0];
      row_of_col[j0] = row_of_col[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<size_t> col_of_row(n);
  for (size_t j = 1; j <= n; ++j) col_of_row[row_of_col[j] - 1] = j - 1;
  return col_of_row;
}

int64_t assignment_cost(const CostMatrix &cost, const std::vector<size_t> &col_of_row) {
  int64_t total = 0;
  for (size_t i = 0; i < col_of_row.size(); ++i) total += cost[i][col_of_row[i]];
  return total;
}

}  // namespace mtsim
