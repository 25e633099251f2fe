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


#ifndef GTFL_FLSIM_PROTOCOL_H_
#define GTFL_FLSIM_PROTOCOL_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gtfl/bits.h"
#include "gtfl/decoder.h"
#include "gtfl/flsim/dataset.h"
#include "gtfl/flsim/model.h"
#include "gtfl/gf2.h"

namespace gtfl::flsim {

enum class Strategy { kFedGt, kNoDefense, kOracle, kGeoMedian };

std::string strategy_name(Strategy s);
Strategy parse_strategy(const std::string& name);

// Where the group-test outcomes come from in the testing round.
enum class TestSource {
  kMetric,     // threshold test on validation metrics of group aggregates
  kSimulated,  // true syndrome through a BSC with simulated_crossover
};

struct ProtocolConfig {
  Hyperparams hp;
  DecoderConfig decoder;
  double rho = 0.96;
  // Metric measured on each group aggregate for the threshold test.
  Metric test_metric = Metric::top1();
  // Source/target used for the attack-accuracy and source-recall columns.
  int report_source = 1;
  int report_target = 7;
  TestSource test_source = TestSource::kMetric;
  double simulated_crossover = 0.0;
  double geomedian_tol = 1e-7;
  std::size_t geomedian_max_iters = 200;
};

struct RoundMetrics {
  std::size_t round = 0;  // 1-based
  double top1 = 0.0;
  double attack_accuracy = 0.0;
  double source_recall = 0.0;
  double p_md = 0.0;             // md / max(n_m, 1)
  double p_fa = 0.0;             // fa / max(n - n_m, 1)
  double p_md_population = 0.0;  // md / n
  double p_fa_population = 0.0;  // fa / n
  std::vector<std::size_t> excluded;
};

// What the server saw and decided in the testing round.
struct GroupTestRecord {
  std::vector<double> group_metrics;
  SyndromeVector true_syndrome;
  SyndromeVector tests;
  DecodeOutcome outcome;
};

struct ProtocolRun {
  std::vector<RoundMetrics> rounds;
  std::optional<GroupTestRecord> group_test;  // fedgt only
};

// Training streams are keyed on (seed, round, client) only, so every strategy
// run with the same seed on the same federation sees the same minibatch
// order for a given client and round.
//
// Per round, non-excluded clients train locally from the global model and the
// global model becomes the mean of their results (geometric median of all
// clients for kGeoMedian). kOracle excludes the true malicious set from round
// 1. kFedGt, at hp.test_round, averages each group, tests the group models,
// decodes and excludes the flagged clients from then on (nobody if every
// client is flagged or the tests are inconsistent).
ProtocolRun run_protocol(const Federation& federation, const AssignmentMatrix& a, const ProtocolConfig& cfg,
                         Strategy strategy, std::uint64_t seed);

}  // namespace gtfl::flsim

#endif  // GTFL_FLSIM_PROTOCOL_H_
