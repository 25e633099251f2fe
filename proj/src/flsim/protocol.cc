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


#include "gtfl/flsim/protocol.h"

#include "gtfl/error.h"
#include "gtfl/flsim/aggregate.h"
#include "gtfl/group_test.h"
#include "gtfl/rng.h"
#include "gtfl/trellis.h"

namespace gtfl::flsim {

namespace {

constexpr std::uint64_t kTrainStream = 10;
constexpr std::uint64_t kTestNoiseStream = 11;

RoundMetrics measure(const ModelParams& global, const Federation& fed, const ProtocolConfig& cfg,
                     const DefectiveVector& excluded, std::size_t round) {
  RoundMetrics m;
  m.round = round;
  const ConfusionMatrix cm = confusion_matrix(global, fed.test);
  m.top1 = evaluate(cm, Metric::top1());
  m.attack_accuracy = evaluate(cm, Metric::attack_accuracy(cfg.report_source, cfg.report_target));
  m.source_recall = evaluate(cm, Metric::source_recall(cfg.report_source));
  const ConfusionCounts counts = confusion(fed.malicious(), excluded);
  m.p_md = counts.p_md();
  m.p_fa = counts.p_fa();
  m.p_md_population = counts.p_md_population();
  m.p_fa_population = counts.p_fa_population();
  for (std::size_t j = 0; j < excluded.size(); ++j) {
    if (excluded[j]) m.excluded.push_back(j);
  }
  return m;
}

}  // namespace

std::string strategy_name(Strategy s) {
  switch (s) {
    case Strategy::kFedGt:
      return "fedgt";
    case Strategy::kNoDefense:
      return "no_defense";
    case Strategy::kOracle:
      return "oracle";
    case Strategy::kGeoMedian:
      return "geomedian";
  }
  return "unknown";
}

Strategy parse_strategy(const std::string& name) {
  if (name == "fedgt") return Strategy::kFedGt;
  if (name == "no_defense") return Strategy::kNoDefense;
  if (name == "oracle") return Strategy::kOracle;
  if (name == "geomedian") return Strategy::kGeoMedian;
  fail(ErrorCode::kInvalidConfig, "unknown strategy '" + name + "'");
}

ProtocolRun run_protocol(const Federation& federation, const AssignmentMatrix& a, const ProtocolConfig& cfg,
                         Strategy strategy, std::uint64_t seed) {
  cfg.hp.validate();
  const std::size_t n = federation.clients.size();
  if (n != a.cols()) {
    fail(ErrorCode::kDimensionMismatch,
         "federation has " + std::to_string(n) + " clients but the matrix has " + std::to_string(a.cols()) +
             " columns");
  }
  if (cfg.rho < 0.0 || cfg.rho > 1.0) fail(ErrorCode::kInvalidConfig, "rho must lie in [0, 1]");
  if (cfg.simulated_crossover < 0.0 || cfg.simulated_crossover > 0.5) {
    fail(ErrorCode::kInvalidConfig, "simulated crossover must lie in [0, 0.5]");
  }
  if (strategy == Strategy::kFedGt) cfg.decoder.validate();

  const std::size_t n_features = federation.validation.n_features;
  ModelParams global = ModelParams::zeros(federation.n_classes, n_features);
  DefectiveVector excluded(n);
  if (strategy == Strategy::kOracle) excluded = federation.malicious();

  ProtocolRun run;
  std::vector<ModelParams> local(n);
  for (std::size_t round = 1; round <= cfg.hp.rounds; ++round) {
    for (std::size_t j = 0; j < n; ++j) {
      if (excluded[j]) continue;
      local[j] = local_train(global, federation.clients[j], cfg.hp, derive_seed(seed, {kTrainStream, round, j}));
    }

    if (strategy == Strategy::kFedGt && round == cfg.hp.test_round) {
      GroupTestRecord rec;
      rec.group_metrics.reserve(a.rows());
      for (std::size_t i = 0; i < a.rows(); ++i) {
        rec.group_metrics.push_back(evaluate(group_aggregate(local, a, i), federation.validation, cfg.test_metric));
      }
      rec.true_syndrome = syndrome(federation.malicious(), a);
      if (cfg.test_source == TestSource::kMetric) {
        rec.tests = threshold_test(rec.group_metrics, cfg.rho);
      } else {
        rec.tests = simulate_noisy_tests(rec.true_syndrome, cfg.simulated_crossover,
                                         derive_seed(seed, {kTestNoiseStream, round}));
      }
      rec.outcome = decode(build_trellis(a), rec.tests, cfg.decoder);
      excluded = rec.outcome.excluded();
      run.group_test = std::move(rec);
    }

    if (strategy == Strategy::kGeoMedian) {
      global = geometric_median(local, cfg.geomedian_tol, cfg.geomedian_max_iters);
    } else {
      global = federated_average(local, excluded);
    }
    run.rounds.push_back(measure(global, federation, cfg, excluded, round));
  }
  return run;
}

}  // namespace gtfl::flsim
