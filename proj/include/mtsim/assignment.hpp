// mtsim/assignment.hpp

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

#ifndef MTSIM_ASSIGNMENT_HPP_
#define MTSIM_ASSIGNMENT_HPP_

#include <cstdint>
#include <vector>

namespace mtsim {

/// Square integer cost matrix, row-major: cost[row][col].
using CostMatrix = std::vector<std::vector<int64_t>>;

/// Minimum-cost perfect matching on a square matrix (Hungarian method with
/// row/column potentials, O(n^3)). Returns col_of_row: row i is matched to
/// column col_of_row[i]. Among optimal matchings the one found is a
/// deterministic function of the matrix. Throws std::invalid_argument for a
/// non-square matrix.
std::vector<size_t> min_cost_assignment(const CostMatrix &cost);

int64_t assignment_cost(const CostMatrix &cost, const std::vector<size_t> &col_of_row);

}  // namespace mtsim

#endif  // MTSIM_ASSIGNMENT_HPP_
