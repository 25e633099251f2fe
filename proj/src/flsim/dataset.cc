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


#include "gtfl/flsim/dataset.h"

#include <cmath>
#include <numbers>

#include "gtfl/error.h"
#include "gtfl/rng.h"

namespace gtfl::flsim {

namespace {

// Stream identifiers for derive_seed(); fixed so that changing one knob does
// not perturb the randomness of unrelated parts of the federation.
enum Stream : std::uint64_t {
  kClientData = 1,
  kValidationData = 2,
  kTestData = 3,
  kMaliciousOrder = 4,
  kPoolShuffle = 5,
};

void check_class(int label, int n_classes) {
  if (label < 0 || label >= n_classes) {
    fail(ErrorCode::kInvalidClass,
         "class " + std::to_string(label) + " outside [0, " + std::to_string(n_classes) + ")");
  }
}

}  // namespace

void Dataset::add(std::span<const float> x, int label) {
  if (x.size() != n_features) fail(ErrorCode::kDimensionMismatch, "feature row has the wrong length");
  features.insert(features.end(), x.begin(), x.end());
  labels.push_back(label);
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  Dataset out;
  out.n_features = n_features;
  out.n_classes = n_classes;
  out.features.reserve(indices.size() * n_features);
  out.labels.reserve(indices.size());
  for (std::size_t i : indices) out.add(row(i), labels[i]);
  return out;
}

std::string attack_name(AttackKind kind) {
  switch (kind) {
    case AttackKind::kNone: return "none";
    case AttackKind::kLabelFlip: return "label_flip";
    case AttackKind::kLabelPermutation: return "label_permutation";
  }
  return "none";
}

AttackKind parse_attack(const std::string& name) {
  if (name == "none") return AttackKind::kNone;
  if (name == "label_flip") return AttackKind::kLabelFlip;
  if (name == "label_permutation") return AttackKind::kLabelPermutation;
  fail(ErrorCode::kInvalidConfig, "unknown attack '" + name + "'");
}

Dataset apply_label_flip(const Dataset& data, int source, int target) {
  check_class(source, data.n_classes);
  check_class(target, data.n_classes);
  if (source == target) fail(ErrorCode::kInvalidClass, "label flip needs distinct source and target");
  Dataset out = data;
  for (int& label : out.labels) {
    if (label == source) label = target;
  }
  return out;
}

Dataset apply_label_permutation(const Dataset& data, int n_classes) {
  if (n_classes < 2) fail(ErrorCode::kInvalidClass, "label permutation needs at least two classes");
  Dataset out = data;
  for (int& label : out.labels) label = (label + 1) % n_classes;
  return out;
}

Dataset apply_attack(const Dataset& data, const Attack& attack) {
  switch (attack.kind) {
    case AttackKind::kNone: return data;
    case AttackKind::kLabelFlip: return apply_label_flip(data, attack.source, attack.target);
    case AttackKind::kLabelPermutation: return apply_label_permutation(data, data.n_classes);
  }
  return data;
}

DefectiveVector Federation::malicious() const {
  DefectiveVector d(clients.size());
  for (std::size_t j = 0; j < clients.size(); ++j) d.set(j, clients[j].is_malicious);
  return d;
}

void assign_attackers(Federation& federation, std::size_t n_malicious, const Attack& attack,
                      std::uint64_t seed) {
  const std::size_t n = federation.clients.size();
  if (n_malicious > n) {
    fail(ErrorCode::kInvalidCounts, std::to_string(n_malicious) + " malicious clients out of " +
                                        std::to_string(n));
  }
  if (n_malicious > 0 && attack.kind == AttackKind::kNone) {
    fail(ErrorCode::kInvalidConfig, "malicious clients need an attack");
  }
  Rng rng(derive_seed(seed, {kMaliciousOrder}));
  const auto order = rng.sample_without_replacement(n, n);
  for (std::size_t k = 0; k < n_malicious; ++k) {
    ClientState& client = federation.clients[order[k]];
    client.is_malicious = true;
    client.attack = attack;
    client.data = apply_attack(client.data, attack);
  }
}

Federation make_synthetic_federation(const SyntheticSpec& spec, std::uint64_t seed) {
  if (spec.n_clients == 0) fail(ErrorCode::kInvalidCounts, "need at least one client");
  if (spec.n_classes < 2 || spec.n_features < 2 || spec.samples_per_client == 0) {
    fail(ErrorCode::kInvalidConfig, "synthetic data needs >= 2 classes, >= 2 features, >= 1 sample");
  }
  if (!(spec.cluster_separation > 0.0)) fail(ErrorCode::kInvalidConfig, "separation must be positive");

  // Chord between adjacent points on a circle of radius R is 2R sin(pi/C).
  const double radius = spec.cluster_separation / (2.0 * std::sin(std::numbers::pi / spec.n_classes));
  std::vector<std::vector<float>> means(spec.n_classes, std::vector<float>(spec.n_features, 0.0f));
  for (int c = 0; c < spec.n_classes; ++c) {
    const double angle = 2.0 * std::numbers::pi * c / spec.n_classes;
    means[c][0] = static_cast<float>(radius * std::cos(angle));
    means[c][1] = static_cast<float>(radius * std::sin(angle));
  }

  auto draw = [&](std::size_t count, Rng& rng) {
    Dataset out;
    out.n_features = spec.n_features;
    out.n_classes = spec.n_classes;
    std::vector<float> x(spec.n_features);
    for (std::size_t i = 0; i < count; ++i) {
      const int label = static_cast<int>(rng.below(spec.n_classes));
      for (std::size_t f = 0; f < spec.n_features; ++f) {
        x[f] = means[label][f] + static_cast<float>(rng.normal());
      }
      out.add(x, label);
    }
    return out;
  };

  Federation fed;
  fed.n_classes = spec.n_classes;
  for (std::size_t j = 0; j < spec.n_clients; ++j) {
    Rng rng(derive_seed(seed, {kClientData, j}));
    fed.clients.push_back({draw(spec.samples_per_client, rng), false, Attack::none()});
  }
  Rng validation_rng(derive_seed(seed, {kValidationData}));
  fed.validation = draw(spec.validation_size, validation_rng);
  Rng test_rng(derive_seed(seed, {kTestData}));
  fed.test = draw(spec.test_size, test_rng);
  return fed;
}

Federation make_federation_from_pool(const Dataset& train, const Dataset& test, std::size_t n_clients,
                                     std::size_t validation_size, std::uint64_t seed) {
  if (n_clients == 0 || train.size() < validation_size + n_clients) {
    fail(ErrorCode::kInvalidCounts, "training pool too small for the requested split");
  }
  std::vector<std::size_t> order(train.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(derive_seed(seed, {kPoolShuffle}));
  rng.shuffle(order);

  Federation fed;
  fed.n_classes = train.n_classes;
  fed.validation = train.subset(std::span(order).first(validation_size));
  fed.test = test;
  const std::size_t pool = order.size() - validation_size;
  const std::size_t base = pool / n_clients;
  const std::size_t extra = pool % n_clients;
  std::size_t offset = validation_size;
  for (std::size_t j = 0; j < n_clients; ++j) {
    const std::size_t count = base + (j < extra ? 1 : 0);
    fed.clients.push_back({train.subset(std::span(order).subspan(offset, count)), false, Attack::none()});
    offset += count;
  }
  return fed;
}

}  // namespace gtfl::flsim
