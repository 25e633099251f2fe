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


#ifndef GTFL_EXPERIMENT_REPORT_H_
#define GTFL_EXPERIMENT_REPORT_H_

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "gtfl/experiment/decoder_only.h"
#include "gtfl/experiment/experiment.h"
#include "gtfl/gf2.h"

namespace gtfl::experiment {

// Columns: trial, strategy, lambda, round, top1, attack_acc, source_recall,
// p_md, p_fa, excluded, p_md_n, p_fa_n. One row per (run, round), then
// summary rows with trial = mean and trial = std (sample standard deviation
// over trials) per (strategy, lambda, round). lambda is empty for
// strategies that do not decode; excluded is a space-separated index list.
void write_csv(std::ostream& out, const ExperimentReport& report);
std::string to_csv(const ExperimentReport& report);

// Columns: lambda, p_md, p_fa.
void write_decoder_only_csv(std::ostream& out, const DecoderOnlyResult& result);

struct CommCost {
  double before = 0.0;          // rounds before the testing round
  double testing_round = 0.0;   // m secure aggregations over groups
  double after = 0.0;           // rounds after, worst case of no exclusion
  double full_round = 0.0;      // c(n)
  double total() const noexcept { return before + testing_round + after; }
  double testing_ratio() const noexcept { return testing_round / full_round; }
};

// Linear secure-aggregation cost model c(k) = k. Throws InvalidConfig on
// non-positive counts or test_round > rounds.
CommCost comm_cost(std::size_t n, std::size_t m, std::size_t max_group_size, std::size_t rounds,
                   std::size_t test_round);

struct PrivacyReport {
  std::size_t privacy_level = 0;
  std::size_t groups = 0;
  std::vector<std::size_t> group_sizes;
};

PrivacyReport privacy_report(const AssignmentMatrix& a);
std::string format_privacy_report(const PrivacyReport& r);

}  // namespace gtfl::experiment

#endif  // GTFL_EXPERIMENT_REPORT_H_
