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

#include <gtest/gtest.h>

#include <cmath>

#include "gtfl/error.h"
#include "gtfl/flsim/dataset.h"

namespace gtfl::flsim {
namespace {

Federation small_federation(std::size_t n_malicious, std::uint64_t seed) {
  SyntheticSpec spec;
  spec.samples_per_client = 60;
  spec.test_size = 500;
  auto fed = make_synthetic_federation(spec, seed);
  if (n_malicious > 0) assign_attackers(fed, n_malicious, Attack::label_permutation(), seed);
  return fed;
}

ProtocolConfig base_config() {
  ProtocolConfig cfg;
  cfg.hp.rounds = 4;
  cfg.hp.learning_rate = 0.05;
  cfg.decoder = {0.2, 0.05, 0.9};
  return cfg;
}

void expect_same(const ProtocolRun& a, const ProtocolRun& b) {
  ASSERT_EQ(a.rounds.size(), b.rounds.size());
  for (std::size_t r = 0; r < a.rounds.size(); ++r) {
    EXPECT_EQ(a.rounds[r].top1, b.rounds[r].top1);
    EXPECT_EQ(a.rounds[r].attack_accuracy, b.rounds[r].attack_accuracy);
    EXPECT_EQ(a.rounds[r].source_recall, b.rounds[r].source_recall);
    EXPECT_EQ(a.rounds[r].excluded, b.rounds[r].excluded);
  }
}

TEST(ProtocolTest, DeterministicForEveryStrategy) {
  const auto fed = small_federation(3, 4);
  const auto a = preset("bch15_7");
  for (Strategy s : {Strategy::kFedGt, Strategy::kNoDefense, Strategy::kOracle, Strategy::kGeoMedian}) {
    expect_same(run_protocol(fed, a, base_config(), s, 99), run_protocol(fed, a, base_config(), s, 99));
  }
}

TEST(ProtocolTest, OracleExcludesExactlyTheMalicious) {
  const auto fed = small_federation(3, 4);
  const auto run = run_protocol(fed, preset("bch15_7"), base_config(), Strategy::kOracle, 1);
  std::vector<std::size_t> want;
  for (std::size_t j = 0; j < 15; ++j) {
    if (fed.clients[j].is_malicious) want.push_back(j);
  }
  for (const auto& m : run.rounds) {
    EXPECT_EQ(m.excluded, want);
    EXPECT_EQ(m.p_md, 0.0);
    EXPECT_EQ(m.p_fa, 0.0);
  }
}

TEST(ProtocolTest, NoDefenseExcludesNobody) {
  const auto fed = small_federation(2, 4);
  const auto run = run_protocol(fed, preset("bch15_7"), base_config(), Strategy::kNoDefense, 1);
  for (const auto& m : run.rounds) {
    EXPECT_TRUE(m.excluded.empty());
    EXPECT_EQ(m.p_md, 1.0);
  }
}

TEST(ProtocolTest, BenignNoiselessTestsExcludeNobody) {
  const auto fed = small_federation(0, 8);
  auto cfg = base_config();
  cfg.decoder.prevalence = 0.1;
  cfg.test_source = TestSource::kSimulated;
  cfg.simulated_crossover = 0.0;
  ASSERT_LT(cfg.decoder.threshold, std::log(0.9 / 0.1));
  const auto run = run_protocol(fed, preset("bch15_7"), cfg, Strategy::kFedGt, 3);
  ASSERT_TRUE(run.group_test.has_value());
  EXPECT_TRUE(run.group_test->tests.none());
  for (const auto& m : run.rounds) EXPECT_TRUE(m.excluded.empty());
}

TEST(ProtocolTest, FedGtExcludesFromTestRoundOn) {
  const auto fed = small_federation(3, 4);
  auto cfg = base_config();
  cfg.hp.test_round = 2;
  cfg.test_source = TestSource::kSimulated;
  const auto run = run_protocol(fed, preset("bch15_7"), cfg, Strategy::kFedGt, 5);
  ASSERT_TRUE(run.group_test.has_value());
  EXPECT_EQ(run.group_test->true_syndrome, syndrome(fed.malicious(), preset("bch15_7")));
  EXPECT_EQ(run.group_test->tests, run.group_test->true_syndrome);
  EXPECT_TRUE(run.rounds[0].excluded.empty());
  std::vector<std::size_t> flagged;
  const auto ex = run.group_test->outcome.excluded();
  for (std::size_t j = 0; j < ex.size(); ++j) {
    if (ex[j]) flagged.push_back(j);
  }
  for (std::size_t r = 1; r < run.rounds.size(); ++r) EXPECT_EQ(run.rounds[r].excluded, flagged);
}

TEST(ProtocolTest, PairedTrainingAcrossStrategies) {
  // With no attackers and nothing excluded, FedGT and no-defense are the same
  // computation; identical seeds must give identical trajectories.
  const auto fed = small_federation(0, 2);
  auto cfg = base_config();
  cfg.test_source = TestSource::kSimulated;
  cfg.decoder.prevalence = 0.1;
  expect_same(run_protocol(fed, preset("bch15_7"), cfg, Strategy::kFedGt, 7),
              run_protocol(fed, preset("bch15_7"), cfg, Strategy::kNoDefense, 7));
  expect_same(run_protocol(fed, preset("bch15_7"), cfg, Strategy::kOracle, 7),
              run_protocol(fed, preset("bch15_7"), cfg, Strategy::kNoDefense, 7));
}

TEST(ProtocolTest, RejectsMismatchedMatrix) {
  const auto fed = small_federation(0, 2);
  EXPECT_THROW(run_protocol(fed, preset("identity(4)"), base_config(), Strategy::kNoDefense, 1), Error);
}

TEST(ProtocolTest, StrategyNames) {
  for (Strategy s : {Strategy::kFedGt, Strategy::kNoDefense, Strategy::kOracle, Strategy::kGeoMedian}) {
    EXPECT_EQ(parse_strategy(strategy_name(s)), s);
  }
  EXPECT_THROW(parse_strategy("fedavg"), Error);
}

}  // namespace
}  // namespace gtfl::flsim
