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


#ifndef GTFL_EXPERIMENT_DECODER_ONLY_H_
#define GTFL_EXPERIMENT_DECODER_ONLY_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gtfl/decoder.h"
#include "gtfl/gf2.h"

namespace gtfl::experiment {

enum class DecoderOnlyMode { kAuto, kExhaustive, kSampling };

DecoderOnlyMode parse_decoder_only_mode(const std::string& name);

inline constexpr double kExhaustiveBudget = 1e7;

// C(n, n_m) * 2^m, the number of (placement, noise pattern) pairs.
double exhaustive_size(std::size_t n, std::size_t n_malicious, std::size_t m);

struct DecoderOnlyPoint {
  double threshold = 0.0;
  // Expected misdetection rate md / n_m (0 when n_m = 0) and false-alarm
  // rate fa / (n - n_m) (0 when n_m = n) of the operative exclusion set.
  double p_md = 0.0;
  double p_fa = 0.0;
};

struct DecoderOnlyResult {
  bool exhaustive = false;
  std::size_t draws = 0;  // sampled trials, or placements x noise patterns
  std::vector<DecoderOnlyPoint> points;  // one per threshold, same order
};

// Decoding without federated learning: d has exactly n_malicious defectives
// placed uniformly, t is its syndrome through BSC(true_crossover), and the
// exclusion set follows the operational policy (nobody on an inconsistent
// test vector or when every client is flagged). In exhaustive mode every
// placement and every noise pattern is enumerated and weighted by its exact
// probability; in sampling mode `trials` draws are taken from `seed`, shared
// across thresholds. kAuto enumerates when exhaustive_size() <= 1e7.
DecoderOnlyResult run_decoder_only(const AssignmentMatrix& a, std::size_t n_malicious, double true_crossover,
                                   const DecoderConfig& decoder, std::span<const double> thresholds,
                                   std::size_t trials, std::uint64_t seed,
                                   DecoderOnlyMode mode = DecoderOnlyMode::kAuto);

}  // namespace gtfl::experiment

#endif  // GTFL_EXPERIMENT_DECODER_ONLY_H_
