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


#ifndef GTFL_EXPERIMENT_CONFIG_H_
#define GTFL_EXPERIMENT_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gtfl/decoder.h"
#include "gtfl/flsim/protocol.h"
#include "gtfl/gf2.h"

namespace gtfl::experiment {

// Flat experiment description. Every field maps to one JSON key of the same
// name; missing keys keep the defaults below, unknown keys are rejected.
struct ExperimentConfig {
  // Preset name (see preset_names()) or path to a matrix file.
  std::string matrix = "bch15_7";
  std::size_t n = 15;
  std::size_t n_malicious = 0;

  std::string attack = "none";  // none | label_flip | label_permutation
  int attack_source = 1;
  int attack_target = 7;

  // Decoder prior; unset means n_malicious / n (0.1 when n_malicious = 0).
  std::optional<double> prevalence;
  double crossover = 0.05;
  std::vector<double> thresholds = {0.9};

  double rho = 0.96;
  // top1 | source_recall | attack_acc | balanced | auto. auto picks
  // source_recall under label_flip and top1 otherwise.
  std::string test_metric = "auto";
  std::string test_source = "metric";  // metric | simulated
  double simulated_crossover = 0.0;

  double learning_rate = 0.01;
  std::size_t batch_size = 64;
  std::size_t local_epochs = 1;
  std::size_t rounds = 10;
  std::size_t test_round = 1;

  std::vector<std::string> strategies = {"fedgt", "no_defense", "oracle"};
  std::size_t trials = 1;
  std::uint64_t master_seed = 1;
  std::size_t threads = 0;  // 0 = hardware concurrency

  std::string dataset = "synthetic";  // synthetic | mnist
  std::string mnist_path = "data/mnist";
  int n_classes = 10;
  std::size_t n_features = 2;
  std::size_t samples_per_client = 200;
  double cluster_separation = 6.0;
  std::size_t validation_size = 100;
  std::size_t test_size = 2000;

  double geomedian_tol = 1e-7;
  std::size_t geomedian_max_iters = 200;

  // Decoder-only runs: crossover of the simulated test channel and the
  // evaluation mode (auto | exhaustive | sampling).
  double true_crossover = 0.05;
  std::string decoder_only_mode = "auto";

  std::string output;  // CSV path; empty = stdout

  // Throws InvalidConfig (or a matrix loading error) when inconsistent.
  void validate() const;

  AssignmentMatrix load_matrix() const;
  double effective_prevalence() const;
  // Decoder settings with thresholds.front() as the threshold.
  DecoderConfig decoder() const;
  flsim::ProtocolConfig protocol() const;
  std::vector<flsim::Strategy> parsed_strategies() const;
  flsim::Attack parsed_attack() const;
};

// Throws ParseError on malformed JSON and InvalidConfig on unknown keys or
// ill-typed values. Does not call validate().
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
// Pretty-printed JSON with every key, in declaration order.
std::string serialize_config(const ExperimentConfig& cfg);

}  // namespace gtfl::experiment

#endif  // GTFL_EXPERIMENT_CONFIG_H_
