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


#include "gtfl/experiment/report.h"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <tuple>

#include "gtfl/error.h"

namespace gtfl::experiment {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string lambda_field(const std::optional<double>& t) { return t ? num(*t) : std::string(); }

constexpr const char* kHeader =
    "trial,strategy,lambda,round,top1,attack_acc,source_recall,p_md,p_fa,excluded,p_md_n,p_fa_n\n";

struct Summary {
  std::vector<std::vector<double>> columns = std::vector<std::vector<double>>(7);
};

}  // namespace

void write_csv(std::ostream& out, const ExperimentReport& report) {
  out << kHeader;
  // Keyed by first appearance so summary rows follow the run order.
  std::vector<std::tuple<std::string, std::string, std::size_t>> order;
  std::map<std::tuple<std::string, std::string, std::size_t>, Summary> summaries;

  for (const auto& r : report.runs) {
    const std::string strategy = flsim::strategy_name(r.strategy);
    const std::string lambda = lambda_field(r.threshold);
    for (const auto& m : r.run.rounds) {
      std::string excluded;
      for (std::size_t j : m.excluded) {
        if (!excluded.empty()) excluded += ' ';
        excluded += std::to_string(j);
      }
      out << r.trial << ',' << strategy << ',' << lambda << ',' << m.round << ',' << num(m.top1) << ','
          << num(m.attack_accuracy) << ',' << num(m.source_recall) << ',' << num(m.p_md) << ',' << num(m.p_fa)
          << ',' << excluded << ',' << num(m.p_md_population) << ',' << num(m.p_fa_population) << '\n';

      const auto key = std::make_tuple(strategy, lambda, m.round);
      auto [it, inserted] = summaries.try_emplace(key);
      if (inserted) order.push_back(key);
      const double values[7] = {m.top1, m.attack_accuracy,   m.source_recall,  m.p_md,
                                m.p_fa, m.p_md_population, m.p_fa_population};
      for (std::size_t c = 0; c < 7; ++c) it->second.columns[c].push_back(values[c]);
    }
  }

  for (const char* stat : {"mean", "std"}) {
    for (const auto& key : order) {
      const auto& cols = summaries.at(key).columns;
      std::vector<double> v;
      for (const auto& col : cols) {
        double mean = 0.0;
        for (double x : col) mean += x;
        mean /= static_cast<double>(col.size());
        if (std::string(stat) == "mean") {
          v.push_back(mean);
        } else {
          double ss = 0.0;
          for (double x : col) ss += (x - mean) * (x - mean);
          v.push_back(col.size() > 1 ? std::sqrt(ss / static_cast<double>(col.size() - 1)) : 0.0);
        }
      }
      out << stat << ',' << std::get<0>(key) << ',' << std::get<1>(key) << ',' << std::get<2>(key) << ','
          << num(v[0]) << ',' << num(v[1]) << ',' << num(v[2]) << ',' << num(v[3]) << ',' << num(v[4]) << ",,"
          << num(v[5]) << ',' << num(v[6]) << '\n';
    }
  }
}

std::string to_csv(const ExperimentReport& report) {
  std::ostringstream out;
  write_csv(out, report);
  return out.str();
}

void write_decoder_only_csv(std::ostream& out, const DecoderOnlyResult& result) {
  out << "lambda,p_md,p_fa\n";
  for (const auto& p : result.points) out << num(p.threshold) << ',' << num(p.p_md) << ',' << num(p.p_fa) << '\n';
}

CommCost comm_cost(std::size_t n, std::size_t m, std::size_t max_group_size, std::size_t rounds,
                   std::size_t test_round) {
  if (n == 0 || m == 0 || max_group_size == 0 || rounds == 0 || test_round == 0) {
    fail(ErrorCode::kInvalidConfig, "communication cost needs positive counts");
  }
  if (test_round > rounds) fail(ErrorCode::kInvalidConfig, "test_round exceeds rounds");
  if (max_group_size > n) fail(ErrorCode::kInvalidConfig, "group size exceeds n");
  const auto c = [](std::size_t k) { return static_cast<double>(k); };
  CommCost cost;
  cost.full_round = c(n);
  cost.before = static_cast<double>(test_round - 1) * c(n);
  cost.testing_round = static_cast<double>(m) * c(max_group_size);
  cost.after = static_cast<double>(rounds - test_round) * c(n);
  return cost;
}

PrivacyReport privacy_report(const AssignmentMatrix& a) {
  PrivacyReport r;
  r.privacy_level = privacy_level(a);
  r.groups = a.rows();
  for (std::size_t i = 0; i < a.rows(); ++i) r.group_sizes.push_back(a.row_weight(i));
  return r;
}

std::string format_privacy_report(const PrivacyReport& r) {
  std::string sizes;
  for (std::size_t s : r.group_sizes) sizes += (sizes.empty() ? "" : " ") + std::to_string(s);
  return "privacy_level " + std::to_string(r.privacy_level) + "\ngroups " + std::to_string(r.groups) +
         "\ngroup_sizes " + sizes + "\n";
}

}  // namespace gtfl::experiment
