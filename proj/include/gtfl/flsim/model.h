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


#ifndef GTFL_FLSIM_MODEL_H_
#define GTFL_FLSIM_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gtfl/flsim/dataset.h"

namespace gtfl::flsim {

// Multiclass softmax regression. weights holds one row of n_features + 1
// values per class, the last entry of each row being the bias.
struct ModelParams {
  int n_classes = 0;
  std::size_t n_features = 0;
  std::vector<double> weights;

  static ModelParams zeros(int n_classes, std::size_t n_features);

  std::size_t stride() const noexcept { return n_features + 1; }
  double& at(int c, std::size_t f) { return weights[c * stride() + f]; }
  double at(int c, std::size_t f) const { return weights[c * stride() + f]; }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

struct Hyperparams {
  double learning_rate = 0.01;
  std::size_t batch_size = 64;
  std::size_t local_epochs = 1;
  std::size_t rounds = 10;
  std::size_t test_round = 1;  // 1-based round at which groups are tested

  void validate() const;
};

// Mean cross-entropy over the examples at `indices`. When `gradient` is
// non-null it receives d(loss)/d(weights), same layout as ModelParams.
double cross_entropy(const ModelParams& model, const Dataset& data, std::span<const std::size_t> indices,
                     std::vector<double>* gradient);

// local_epochs passes of minibatch SGD from `global`; the example order of
// each epoch is drawn from `seed`.
ModelParams local_train(const ModelParams& global, const ClientState& client, const Hyperparams& hp,
                        std::uint64_t seed);

int predict(const ModelParams& model, std::span<const float> x);

enum class MetricKind { kTop1, kAttackAccuracy, kSourceRecall, kBalanced };

struct Metric {
  MetricKind kind = MetricKind::kTop1;
  int source = 1;
  int target = 7;

  static Metric top1() { return {MetricKind::kTop1, 0, 0}; }
  static Metric balanced() { return {MetricKind::kBalanced, 0, 0}; }
  static Metric attack_accuracy(int source, int target) { return {MetricKind::kAttackAccuracy, source, target}; }
  static Metric source_recall(int source) { return {MetricKind::kSourceRecall, source, source}; }
};

std::string metric_name(MetricKind kind);
MetricKind parse_metric(const std::string& name);

// counts[true * C + predicted].
struct ConfusionMatrix {
  int n_classes = 0;
  std::vector<std::size_t> counts;

  std::size_t at(int truth, int predicted) const { return counts[truth * n_classes + predicted]; }
  std::size_t row_total(int truth) const;
  std::size_t total() const;
};

ConfusionMatrix confusion_matrix(const ModelParams& model, const Dataset& data);

// top1: fraction correct. attack accuracy: fraction of source examples
// predicted as target. source recall: fraction of source examples predicted
// correctly. balanced: mean recall over classes present in the data.
// Throws EmptySourceClass when a source-based metric has no source examples.
double evaluate(const ConfusionMatrix& cm, const Metric& metric);
double evaluate(const ModelParams& model, const Dataset& data, const Metric& metric);

}  // namespace gtfl::flsim

#endif  // GTFL_FLSIM_MODEL_H_
