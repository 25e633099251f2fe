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


#ifndef GTFL_FLSIM_DATASET_H_
#define GTFL_FLSIM_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gtfl/bits.h"

namespace gtfl::flsim {

// Labelled examples with dense features, row-major.
struct Dataset {
  std::size_t n_features = 0;
  int n_classes = 0;
  std::vector<float> features;
  std::vector<int> labels;

  std::size_t size() const noexcept { return labels.size(); }
  std::span<const float> row(std::size_t i) const {
    return {features.data() + i * n_features, n_features};
  }
  void add(std::span<const float> x, int label);
  // Examples at `indices`, in that order.
  Dataset subset(std::span<const std::size_t> indices) const;
};

enum class AttackKind { kNone, kLabelFlip, kLabelPermutation };

struct Attack {
  AttackKind kind = AttackKind::kNone;
  int source = 1;  // label flip only
  int target = 7;

  static Attack none() { return {}; }
  static Attack label_flip(int source, int target) { return {AttackKind::kLabelFlip, source, target}; }
  static Attack label_permutation() { return {AttackKind::kLabelPermutation, 0, 0}; }
};

std::string attack_name(AttackKind kind);
AttackKind parse_attack(const std::string& name);

// Relabels every `source` example as `target`. Throws InvalidClass if the
// classes coincide or fall outside [0, n_classes).
Dataset apply_label_flip(const Dataset& data, int source, int target);

// label -> (label + 1) mod n_classes. Requires n_classes >= 2.
Dataset apply_label_permutation(const Dataset& data, int n_classes);

Dataset apply_attack(const Dataset& data, const Attack& attack);

// One simulated client. `data` is what the client trains on, i.e. already
// poisoned when the client is malicious.
struct ClientState {
  Dataset data;
  bool is_malicious = false;
  Attack attack;
};

struct Federation {
  std::vector<ClientState> clients;
  Dataset validation;  // held by the server for group tests
  Dataset test;        // held out for reporting
  int n_classes = 0;

  DefectiveVector malicious() const;
};

// Marks `n_malicious` clients malicious and poisons their data. The malicious
// set is the first n_malicious entries of a seed-determined permutation, so
// for a fixed seed M(k) is a subset of M(k+1).
void assign_attackers(Federation& federation, std::size_t n_malicious, const Attack& attack,
                      std::uint64_t seed);

struct SyntheticSpec {
  std::size_t n_clients = 15;
  int n_classes = 10;
  std::size_t n_features = 2;
  std::size_t samples_per_client = 200;
  // Distance between the means of adjacent classes, in units of the
  // per-feature noise standard deviation.
  double cluster_separation = 6.0;
  std::size_t validation_size = 100;
  std::size_t test_size = 2000;
};

// Homogeneous Gaussian-cluster federation. Class means lie evenly on a circle
// in the first two features with adjacent classes cluster_separation apart;
// every feature carries unit-variance noise. Labels are drawn uniformly. Clients are returned clean
// and benign; use assign_attackers() to poison them.
Federation make_synthetic_federation(const SyntheticSpec& spec, std::uint64_t seed);

// Splits a training pool into a validation set of `validation_size` random
// examples and n equal random client shards (remainder spread one each over
// the first shards).
Federation make_federation_from_pool(const Dataset& train, const Dataset& test, std::size_t n_clients,
                                     std::size_t validation_size, std::uint64_t seed);

}  // namespace gtfl::flsim

#endif  // GTFL_FLSIM_DATASET_H_
