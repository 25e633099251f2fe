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


#ifndef GTFL_FLSIM_AGGREGATE_H_
#define GTFL_FLSIM_AGGREGATE_H_

#include <cstddef>
#include <span>
#include <vector>

#include "gtfl/bits.h"
#include "gtfl/flsim/model.h"
#include "gtfl/gf2.h"

namespace gtfl::flsim {

// Unweighted parameter mean of models[k] for k in `members`.
ModelParams mean_of(std::span<const ModelParams> models, std::span<const std::size_t> members);

// Mean of the models of clients in group `group` of `a`. The group aggregate
// a secure-aggregation round would reveal is the sum; dividing by the group
// size gives a model that can be evaluated directly.
ModelParams group_aggregate(std::span<const ModelParams> models, const AssignmentMatrix& a,
                            std::size_t group);

// Mean over clients not marked in `excluded`.
ModelParams federated_average(std::span<const ModelParams> models, const DefectiveVector& excluded);

// sum_j ||z - c_j||_2.
double sum_of_distances(const ModelParams& z, std::span<const ModelParams> models);

inline constexpr double kWeiszfeldSmoothing = 1e-6;

// Smoothed Weiszfeld iteration for the geometric median, started from the
// mean: z <- sum w_j c_j / sum w_j with w_j = 1 / max(||z - c_j||, 1e-6),
// stopping once ||z_new - z|| < tol or after max_iters steps. When `trace`
// is given it receives the objective at every iterate, starting point
// included.
ModelParams geometric_median(std::span<const ModelParams> models, double tol = 1e-7,
                             std::size_t max_iters = 200, std::vector<double>* trace = nullptr);

}  // namespace gtfl::flsim

#endif  // GTFL_FLSIM_AGGREGATE_H_
