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


#include "gtfl/flsim/aggregate.h"

#include <algorithm>
#include <cmath>

#include "gtfl/error.h"

namespace gtfl::flsim {

namespace {

double distance(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    acc += d * d;
  }
  return std::sqrt(acc);
}

void check_same_shape(std::span<const ModelParams> models) {
  for (const auto& m : models) {
    if (m.weights.size() != models.front().weights.size()) {
      fail(ErrorCode::kDimensionMismatch, "models have different shapes");
    }
  }
}

}  // namespace

ModelParams mean_of(std::span<const ModelParams> models, std::span<const std::size_t> members) {
  if (members.empty()) fail(ErrorCode::kEmptyGroup, "cannot average an empty set of models");
  ModelParams out = models[members.front()];
  for (std::size_t j : members) {
    if (models[j].weights.size() != out.weights.size()) {
      fail(ErrorCode::kDimensionMismatch, "models have different shapes");
    }
  }
  std::fill(out.weights.begin(), out.weights.end(), 0.0);
  for (std::size_t j : members) {
    const auto& w = models[j].weights;
    for (std::size_t k = 0; k < w.size(); ++k) out.weights[k] += w[k];
  }
  const double scale = 1.0 / static_cast<double>(members.size());
  for (double& v : out.weights) v *= scale;
  return out;
}

ModelParams group_aggregate(std::span<const ModelParams> models, const AssignmentMatrix& a,
                            std::size_t group) {
  if (models.size() != a.cols()) {
    fail(ErrorCode::kDimensionMismatch, "need one model per client");
  }
  const auto members = a.group(group);
  return mean_of(models, members);
}

ModelParams federated_average(std::span<const ModelParams> models, const DefectiveVector& excluded) {
  if (excluded.size() != models.size()) fail(ErrorCode::kDimensionMismatch, "exclusion mask length");
  std::vector<std::size_t> members;
  for (std::size_t j = 0; j < models.size(); ++j) {
    if (!excluded[j]) members.push_back(j);
  }
  return mean_of(models, members);
}

double sum_of_distances(const ModelParams& z, std::span<const ModelParams> models) {
  double total = 0.0;
  for (const auto& c : models) total += distance(z.weights, c.weights);
  return total;
}

ModelParams geometric_median(std::span<const ModelParams> models, double tol, std::size_t max_iters,
                             std::vector<double>* trace) {
  if (models.empty()) fail(ErrorCode::kEmptyGroup, "geometric median of no models");
  check_same_shape(models);
  std::vector<std::size_t> all(models.size());
  for (std::size_t j = 0; j < all.size(); ++j) all[j] = j;
  ModelParams z = mean_of(models, all);
  if (trace) trace->assign(1, sum_of_distances(z, models));

  std::vector<double> next(z.weights.size());
  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    std::fill(next.begin(), next.end(), 0.0);
    double weight_sum = 0.0;
    for (const auto& c : models) {
      const double w = 1.0 / std::max(distance(z.weights, c.weights), kWeiszfeldSmoothing);
      weight_sum += w;
      for (std::size_t k = 0; k < next.size(); ++k) next[k] += w * c.weights[k];
    }
    for (double& v : next) v /= weight_sum;
    const double step = distance(next, z.weights);
    z.weights.swap(next);
    if (trace) trace->push_back(sum_of_distances(z, models));
    if (step < tol) break;
  }
  return z;
}

}  // namespace gtfl::flsim
