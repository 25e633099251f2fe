/*
 * Copyright 2026 The gtfl Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#ifndef GTFL_TESTS_TEST_UTIL_H_
#define GTFL_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "gtfl/gf2.h"
#include "gtfl/rng.h"

namespace gtfl::testing_util {

// Random m x n matrix with no zero column; rows left empty by the draw get
// one random entry so the matrix is valid.
inline AssignmentMatrix random_matrix(std::size_t m, std::size_t n, Rng& rng) {
  std::vector<std::vector<int>> rows(m, std::vector<int>(n, 0));
  for (std::size_t j = 0; j < n; ++j) {
    std::uint64_t col = 0;
    while (col == 0) col = rng.below(std::uint64_t{1} << m);
    for (std::size_t i = 0; i < m; ++i) rows[i][j] = (col >> i) & 1u;
  }
  for (auto& row : rows) {
    bool any = false;
    for (int v : row) any = any || v;
    if (!any) row[rng.below(n)] = 1;
  }
  return AssignmentMatrix::from_dense(rows);
}

inline DefectiveVector random_defectives(std::size_t n, Rng& rng) {
  DefectiveVector d(n);
  for (std::size_t j = 0; j < n; ++j) d.set(j, rng.bernoulli(0.5));
  return d;
}

inline bool close_relative(double a, double b, double rel) {
  const double scale = std::max({std::abs(a), std::abs(b), 1.0});
  return std::abs(a - b) <= rel * scale;
}

}  // namespace gtfl::testing_util

#endif  // GTFL_TESTS_TEST_UTIL_H_
