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


#include "gtfl/flsim/model.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gtfl/error.h"
#include "gtfl/rng.h"

namespace gtfl::flsim {

namespace {

// logits -> softmax probabilities, in place. Returns log-sum-exp.
double softmax_inplace(std::vector<double>& z) {
  const double top = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double& v : z) {
    v = std::exp(v - top);
    sum += v;
  }
  for (double& v : z) v /= sum;
  return top + std::log(sum);
}

void compute_logits(const ModelParams& model, std::span<const float> x, std::vector<double>& logits) {
  logits.assign(model.n_classes, 0.0);
  const std::size_t stride = model.stride();
  for (int c = 0; c < model.n_classes; ++c) {
    const double* w = model.weights.data() + c * stride;
    double acc = w[model.n_features];
    for (std::size_t f = 0; f < model.n_features; ++f) acc += w[f] * x[f];
    logits[c] = acc;
  }
}

}  // namespace

ModelParams ModelParams::zeros(int n_classes, std::size_t n_features) {
  return {n_classes, n_features, std::vector<double>(n_classes * (n_features + 1), 0.0)};
}

void Hyperparams::validate() const {
  if (!(learning_rate >= 0.0) || batch_size == 0 || local_epochs == 0 || rounds == 0 || test_round == 0) {
    fail(ErrorCode::kInvalidConfig, "hyperparameters must be positive");
  }
  if (test_round > rounds) fail(ErrorCode::kInvalidConfig, "test_round exceeds the number of rounds");
}

double cross_entropy(const ModelParams& model, const Dataset& data, std::span<const std::size_t> indices,
                     std::vector<double>* gradient) {
  if (data.n_features != model.n_features) {
    fail(ErrorCode::kDimensionMismatch, "model expects " + std::to_string(model.n_features) +
                                            " features, data has " + std::to_string(data.n_features));
  }
  if (gradient) gradient->assign(model.weights.size(), 0.0);
  if (indices.empty()) return 0.0;

  const std::size_t stride = model.stride();
  std::vector<double> z;
  double loss = 0.0;
  for (std::size_t i : indices) {
    const auto x = data.row(i);
    const int y = data.labels[i];
    compute_logits(model, x, z);
    const double logit_y = z[y];
    loss += softmax_inplace(z) - logit_y;
    if (!gradient) continue;
    z[y] -= 1.0;
    for (int c = 0; c < model.n_classes; ++c) {
      double* g = gradient->data() + c * stride;
      const double r = z[c];
      for (std::size_t f = 0; f < model.n_features; ++f) g[f] += r * x[f];
      g[model.n_features] += r;
    }
  }
  const double scale = 1.0 / static_cast<double>(indices.size());
  if (gradient) {
    for (double& g : *gradient) g *= scale;
  }
  return loss * scale;
}

ModelParams local_train(const ModelParams& global, const ClientState& client, const Hyperparams& hp,
                        std::uint64_t seed) {
  const Dataset& data = client.data;
  if (data.n_features != global.n_features) fail(ErrorCode::kDimensionMismatch, "feature count mismatch");
  ModelParams model = global;
  if (data.size() == 0) return model;

  Rng rng(seed);
  std::vector<std::size_t> order(data.size());
  std::vector<double> grad;
  for (std::size_t epoch = 0; epoch < hp.local_epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(order);
    for (std::size_t start = 0; start < order.size(); start += hp.batch_size) {
      const std::size_t len = std::min(hp.batch_size, order.size() - start);
      const double loss = cross_entropy(model, data, std::span(order).subspan(start, len), &grad);
      if (!std::isfinite(loss)) fail(ErrorCode::kNonFiniteLoss, "local training diverged");
      for (std::size_t k = 0; k < grad.size(); ++k) model.weights[k] -= hp.learning_rate * grad[k];
    }
  }
  return model;
}

int predict(const ModelParams& model, std::span<const float> x) {
  std::vector<double> z;
  compute_logits(model, x, z);
  return static_cast<int>(std::max_element(z.begin(), z.end()) - z.begin());
}

std::string metric_name(MetricKind kind) {
  switch (kind) {
    case MetricKind::kTop1: return "top1";
    case MetricKind::kAttackAccuracy: return "attack_acc";
    case MetricKind::kSourceRecall: return "source_recall";
    case MetricKind::kBalanced: return "balanced";
  }
  return "top1";
}

MetricKind parse_metric(const std::string& name) {
  if (name == "top1") return MetricKind::kTop1;
  if (name == "attack_acc") return MetricKind::kAttackAccuracy;
  if (name == "source_recall") return MetricKind::kSourceRecall;
  if (name == "balanced") return MetricKind::kBalanced;
  fail(ErrorCode::kInvalidConfig, "unknown metric '" + name + "'");
}

std::size_t ConfusionMatrix::row_total(int truth) const {
  std::size_t total = 0;
  for (int p = 0; p < n_classes; ++p) total += at(truth, p);
  return total;
}

std::size_t ConfusionMatrix::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

ConfusionMatrix confusion_matrix(const ModelParams& model, const Dataset& data) {
  if (data.n_features != model.n_features) fail(ErrorCode::kDimensionMismatch, "feature count mismatch");
  ConfusionMatrix cm{model.n_classes, std::vector<std::size_t>(model.n_classes * model.n_classes, 0)};
  std::vector<double> z;
  for (std::size_t i = 0; i < data.size(); ++i) {
    compute_logits(model, data.row(i), z);
    const int predicted = static_cast<int>(std::max_element(z.begin(), z.end()) - z.begin());
    ++cm.counts[data.labels[i] * model.n_classes + predicted];
  }
  return cm;
}

double evaluate(const ConfusionMatrix& cm, const Metric& metric) {
  const std::size_t total = cm.total();
  if (total == 0) fail(ErrorCode::kDimensionMismatch, "cannot evaluate on an empty dataset");
  switch (metric.kind) {
    case MetricKind::kTop1: {
      std::size_t correct = 0;
      for (int c = 0; c < cm.n_classes; ++c) correct += cm.at(c, c);
      return static_cast<double>(correct) / static_cast<double>(total);
    }
    case MetricKind::kAttackAccuracy:
    case MetricKind::kSourceRecall: {
      if (metric.source < 0 || metric.source >= cm.n_classes || metric.target < 0 ||
          metric.target >= cm.n_classes) {
        fail(ErrorCode::kInvalidClass, "metric class out of range");
      }
      const std::size_t sources = cm.row_total(metric.source);
      if (sources == 0) fail(ErrorCode::kEmptySourceClass, "no examples of the source class");
      const int hit = metric.kind == MetricKind::kSourceRecall ? metric.source : metric.target;
      return static_cast<double>(cm.at(metric.source, hit)) / static_cast<double>(sources);
    }
    case MetricKind::kBalanced: {
      double recall_sum = 0.0;
      int present = 0;
      for (int c = 0; c < cm.n_classes; ++c) {
        const std::size_t row = cm.row_total(c);
        if (row == 0) continue;
        recall_sum += static_cast<double>(cm.at(c, c)) / static_cast<double>(row);
        ++present;
      }
      return recall_sum / present;
    }
  }
  return 0.0;
}

double evaluate(const ModelParams& model, const Dataset& data, const Metric& metric) {
  return evaluate(confusion_matrix(model, data), metric);
}

}  // namespace gtfl::flsim
