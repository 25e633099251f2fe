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


#ifndef GTFL_EXPERIMENT_EXPERIMENT_H_
#define GTFL_EXPERIMENT_EXPERIMENT_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "gtfl/experiment/config.h"
#include "gtfl/flsim/protocol.h"

namespace gtfl::experiment {

// One protocol run inside a trial. threshold is unset for strategies that
// do not decode.
struct StrategyRun {
  std::size_t trial = 0;
  flsim::Strategy strategy = flsim::Strategy::kNoDefense;
  std::optional<double> threshold;
  DefectiveVector malicious;  // true malicious set of the federation used
  flsim::ProtocolRun run;
};

struct ExperimentReport {
  // Ordered by (trial, strategy as listed in the config, threshold).
  std::vector<StrategyRun> runs;
};

// Seed of trial k; shared by every strategy and threshold of that trial.
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t trial);

// Runs cfg.trials trials on a worker pool of cfg.threads threads. Each trial
// builds its federation from trial_seed(), then runs every strategy (fedgt
// once per threshold) on that same federation with that same seed.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

}  // namespace gtfl::experiment

#endif  // GTFL_EXPERIMENT_EXPERIMENT_H_
