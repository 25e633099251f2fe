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


// Acceptance suite: one PASS / FAIL / SKIP line per criterion. Exits nonzero
// when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "gtfl/decoder.h"
#include "gtfl/error.h"
#include "gtfl/experiment/config.h"
#include "gtfl/experiment/decoder_only.h"
#include "gtfl/experiment/experiment.h"
#include "gtfl/experiment/report.h"
#include "gtfl/flsim/mnist.h"
#include "gtfl/gf2.h"
#include "gtfl/rng.h"
#include "gtfl/trellis.h"

namespace {

using namespace gtfl;
using namespace gtfl::experiment;

enum class Verdict { kPass, kFail, kSkip };

struct Outcome {
  Verdict verdict;
  std::string detail;
};

Outcome pass(std::string detail) { return {Verdict::kPass, std::move(detail)}; }
Outcome fail_with(std::string detail) { return {Verdict::kFail, std::move(detail)}; }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

AssignmentMatrix random_matrix(std::size_t m, std::size_t n, Rng& rng) {
  std::vector<std::vector<int>> rows(m, std::vector<int>(n, 0));
  for (std::size_t j = 0; j < n; ++j) {
    std::uint64_t col = 0;
    while (col == 0) col = rng.below(std::uint64_t{1} << m);
    for (std::size_t i = 0; i < m; ++i) rows[i][j] = (col >> i) & 1u;
  }
  for (auto& row : rows) {
    if (std::none_of(row.begin(), row.end(), [](int v) { return v != 0; })) row[rng.below(n)] = 1;
  }
  return AssignmentMatrix::from_dense(rows);
}

bool close_relative(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1.0});
}

Outcome decoder_oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(derive_seed(2024, {1}));
  std::size_t compared = 0, inconsistent = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 1 + rng.below(6);
    const std::size_t n = 1 + rng.below(12);
    const auto a = random_matrix(m, n, rng);
    const auto trellis = build_trellis(a);
    for (double delta : {0.1, 0.3}) {
      for (double p : {0.0, 0.05, 0.2}) {
        const DecoderConfig cfg{delta, p, 0.0};
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
          const auto t = SyndromeVector::from_mask(mask, m);
          LlrVector fast, slow;
          bool fast_threw = false, slow_threw = false;
          try {
            fast = forward_backward(trellis, t, cfg);
          } catch (const Error& e) {
            if (e.code() != ErrorCode::kAllPathsZeroProbability) throw;
            fast_threw = true;
          }
          try {
            slow = brute_force_posterior(a, t, cfg);
          } catch (const Error& e) {
            if (e.code() != ErrorCode::kAllPathsZeroProbability) throw;
            slow_threw = true;
          }
          if (fast_threw != slow_threw) {
            return fail_with(fmt("trial %d: inconsistency disagreement at t=%llu", trial,
                                 static_cast<unsigned long long>(mask)));
          }
          if (fast_threw) {
            ++inconsistent;
            continue;
          }
          for (std::size_t j = 0; j < n; ++j) {
            if (!close_relative(fast[j], slow[j], 1e-9)) {
              return fail_with(fmt("trial %d client %zu: %.17g vs %.17g", trial, j, fast[j], slow[j]));
            }
            worst = std::max(worst, std::abs(fast[j] - slow[j]) /
                                        std::max({std::abs(fast[j]), std::abs(slow[j]), 1.0}));
          }
          ++compared;
        }
      }
    }
  }
  const double elapsed = seconds_since(t0);
  const std::string detail = fmt("%zu posteriors compared, %zu inconsistent pairs agreed, worst rel err %.3g, %.2f s",
                                 compared, inconsistent, worst, elapsed);
  return elapsed < 60.0 ? pass(detail) : fail_with(detail + " (over 60 s)");
}

Outcome degenerate_cases() {
  for (std::size_t n = 1; n <= 10; ++n) {
    const auto a = AssignmentMatrix::identity(n);
    const auto trellis = build_trellis(a);
    const DecoderConfig cfg{0.1, 0.0, 0.0};
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      const auto t = SyndromeVector::from_mask(mask, n);
      const auto d_hat = decide(forward_backward(trellis, t, cfg), 0.0).d_hat;
      if (d_hat.to_mask() != mask) return fail_with(fmt("identity n=%zu t=%llu", n, (unsigned long long)mask));
    }
  }
  for (std::size_t n = 1; n <= 15; ++n) {
    const auto llr = forward_backward(build_trellis(AssignmentMatrix::all_ones(n)), SyndromeVector{1}, {});
    for (double v : llr) {
      if (v != llr.front()) return fail_with(fmt("all-ones n=%zu: unequal LLRs", n));
    }
  }
  return pass("identity n<=10 recovers every t exactly; all-ones n<=15 gives identical LLRs");
}

Outcome privacy_levels() {
  struct Expect {
    const char* name;
    std::size_t level, groups, size;
  };
  std::string detail;
  for (const Expect& e : {Expect{"bch15_7", 4, 8, 4}, Expect{"cyclic15_9", 6, 6, 6},
                          Expect{"cyclic15_11", 8, 4, 8}, Expect{"bch31_21", 12, 10, 12}}) {
    const auto r = privacy_report(preset(e.name));
    const bool sizes_ok = std::all_of(r.group_sizes.begin(), r.group_sizes.end(),
                                      [&](std::size_t s) { return s == e.size; });
    const std::string line = fmt("%s: level %zu, %zu groups", e.name, r.privacy_level, r.groups);
    if (r.privacy_level != e.level || r.groups != e.groups || !sizes_ok) return fail_with(line);
    detail += (detail.empty() ? "" : "; ") + line + fmt(" of %zu", e.size);
  }
  return pass(detail);
}

Outcome threshold_monotonicity() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> lambdas{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  const DecoderConfig cfg{default_prevalence(3, 15), 0.05, 0.0};
  const auto r = run_decoder_only(preset("bch15_7"), 3, 0.05, cfg, lambdas, 0, 1, DecoderOnlyMode::kExhaustive);
  std::string detail;
  for (std::size_t k = 0; k < r.points.size(); ++k) {
    const auto& pt = r.points[k];
    detail += fmt("%sL=%.1f md=%.4f fa=%.4f", k ? " " : "", pt.threshold, pt.p_md, pt.p_fa);
    if (k > 0 && (pt.p_fa < r.points[k - 1].p_fa || pt.p_md > r.points[k - 1].p_md)) {
      return fail_with("not monotone: " + detail);
    }
  }
  const double elapsed = seconds_since(t0);
  detail += fmt(" (%.2f s)", elapsed);
  return elapsed < 120.0 ? pass(detail) : fail_with(detail + " over 120 s");
}

double final_top1(const StrategyRun& r) { return r.run.rounds.back().top1; }

struct StrategyMeans {
  double fedgt = 0.0, no_defense = 0.0, oracle = 0.0;
};

StrategyMeans mean_final_top1(const ExperimentReport& report, std::size_t trials) {
  StrategyMeans m;
  for (const auto& r : report.runs) {
    switch (r.strategy) {
      case flsim::Strategy::kFedGt: m.fedgt += final_top1(r); break;
      case flsim::Strategy::kNoDefense: m.no_defense += final_top1(r); break;
      case flsim::Strategy::kOracle: m.oracle += final_top1(r); break;
      default: break;
    }
  }
  m.fedgt /= trials;
  m.no_defense /= trials;
  m.oracle /= trials;
  return m;
}

std::string mnist_dir() {
  const char* env = std::getenv("GTFL_MNIST_DIR");
  return env ? env : "data/mnist";
}

Outcome mnist_reproduction() {
  if (!flsim::mnist_available(mnist_dir())) {
    return {Verdict::kSkip, "MNIST files not found in " + mnist_dir() + "; synthetic criterion 6 governs"};
  }
  auto base = parse_config(R"({"dataset": "mnist", "trials": 10, "strategies": ["no_defense"]})");
  base.mnist_path = mnist_dir();
  const auto benign = mean_final_top1(run_experiment(base), base.trials);
  std::string detail = fmt("benign top1 %.4f", benign.no_defense);
  if (std::abs(benign.no_defense - 0.903) > 0.010) return fail_with(detail + " outside 0.903 +- 0.010");

  auto attacked = base;
  attacked.n_malicious = 5;
  attacked.attack = "label_flip";
  attacked.thresholds = {0.9};
  attacked.strategies = {"fedgt", "no_defense", "oracle"};
  const auto report = run_experiment(attacked);
  double att_fedgt = 0.0, att_none = 0.0;
  for (const auto& r : report.runs) {
    const double v = r.run.rounds.back().attack_accuracy;
    if (r.strategy == flsim::Strategy::kFedGt) att_fedgt += v;
    if (r.strategy == flsim::Strategy::kNoDefense) att_none += v;
  }
  att_fedgt /= attacked.trials;
  att_none /= attacked.trials;
  const auto m = mean_final_top1(report, attacked.trials);
  detail += fmt("; attack acc fedgt %.4f no_defense %.4f; top1 fedgt %.4f oracle %.4f", att_fedgt, att_none,
                m.fedgt, m.oracle);
  if (att_none < 3.0 * att_fedgt || std::abs(m.fedgt - m.oracle) > 0.005) return fail_with(detail);
  return pass(detail);
}

ExperimentConfig synthetic_fixture() {
  return parse_config(R"({
    "matrix": "bch15_7", "n": 15, "n_malicious": 3, "attack": "label_permutation",
    "thresholds": [0.9], "crossover": 0.05,
    "test_source": "simulated", "simulated_crossover": 0.0,
    "learning_rate": 0.1, "batch_size": 64, "local_epochs": 1, "rounds": 10, "test_round": 1,
    "n_classes": 10, "n_features": 4, "samples_per_client": 200, "cluster_separation": 6.0,
    "strategies": ["fedgt", "no_defense", "oracle"], "trials": 20, "master_seed": 1})");
}

Outcome synthetic_end_to_end() {
  const auto t0 = std::chrono::steady_clock::now();
  // Calibration: without attackers the setup must be learnable, otherwise
  // the gaps below say nothing about the defense.
  auto calib = synthetic_fixture();
  calib.n_malicious = 0;
  calib.attack = "none";
  calib.rounds = 5;
  calib.strategies = {"no_defense"};
  const auto calib_report = run_experiment(calib);
  double best = 0.0;
  for (std::size_t round = 0; round < calib.rounds; ++round) {
    double mean = 0.0;
    for (const auto& r : calib_report.runs) mean += r.run.rounds[round].top1;
    best = std::max(best, mean / calib.trials);
  }
  std::string detail = fmt("calibration best mean top1 in 5 rounds %.4f", best);
  if (best < 0.95) return fail_with(detail + " below 0.95");

  const auto cfg = synthetic_fixture();
  const auto m = mean_final_top1(run_experiment(cfg), cfg.trials);
  detail += fmt("; final top1 oracle %.4f fedgt %.4f no_defense %.4f (oracle-fedgt %.4f, oracle-no_defense %.4f); %.1f s",
                m.oracle, m.fedgt, m.no_defense, m.oracle - m.fedgt, m.oracle - m.no_defense, seconds_since(t0));
  if (m.oracle - m.fedgt > 0.02 || m.oracle - m.no_defense < 0.05) return fail_with(detail);
  return pass(detail);
}

// Spread over the mismatch grid of min over lambdas of P_MD + P_FA.
double mismatch_spread(const std::vector<double>& lambdas, std::string& where) {
  const auto a = preset("bch15_7");
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int di = 0; di < 7; ++di) {
    const double delta = 0.05 + 0.05 * di;
    for (int pi = 0; pi < 5; ++pi) {
      const double p = 0.05 * pi;
      const auto r = run_decoder_only(a, 3, 0.05, {delta, p, 0.0}, lambdas, 0, 1, DecoderOnlyMode::kExhaustive);
      double best = std::numeric_limits<double>::infinity();
      for (const auto& pt : r.points) best = std::min(best, pt.p_md + pt.p_fa);
      if (best < lo) lo = best;
      if (best > hi) {
        hi = best;
        where = fmt("worst at prevalence %.2f crossover %.2f", delta, p);
      }
    }
  }
  where = fmt("min %.4f max %.4f, ", lo, hi) + where;
  return hi - lo;
}

Outcome mismatch_robustness() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<double> coarse;
  for (int k = 1; k <= 9; ++k) coarse.push_back(0.1 * k);
  std::string coarse_where;
  const double coarse_spread = mismatch_spread(coarse, coarse_where);
  std::printf("INFO 7: threshold restricted to {0.1..0.9}: spread %.4f (%s)\n", coarse_spread, coarse_where.c_str());

  std::vector<double> wide;
  for (int k = -60; k <= 100; ++k) wide.push_back(0.1 * k);
  std::string where;
  const double spread = mismatch_spread(wide, where);
  const std::string detail =
      fmt("best threshold in [-6, 10] per cell: spread %.4f (%s), %.1f s", spread, where.c_str(), seconds_since(t0));
  return spread <= 0.05 ? pass(detail) : fail_with(detail);
}

Outcome communication_cost() {
  const auto c = comm_cost(15, 8, 4, 10, 1);
  const std::string detail = fmt("testing round %.0f, ratio %.4f", c.testing_round, c.testing_ratio());
  if (c.testing_round != 32.0 || c.testing_ratio() < 2.0 || c.testing_ratio() > 2.2) return fail_with(detail);
  return pass(detail);
}

Outcome determinism() {
  auto cfg = parse_config(R"({"n_malicious": 3, "attack": "label_permutation", "trials": 4, "rounds": 3,
                              "samples_per_client": 60, "test_size": 500, "thresholds": [0.5, 0.9],
                              "strategies": ["fedgt", "no_defense", "oracle", "geomedian"], "master_seed": 42})");
  const std::string first = to_csv(run_experiment(cfg));
  const auto report = run_experiment(cfg);
  if (to_csv(report) != first) return fail_with("CSV differs between runs");
  cfg.threads = 1;
  if (to_csv(run_experiment(cfg)) != first) return fail_with("CSV differs with one worker thread");
  for (const auto& a : report.runs) {
    for (const auto& b : report.runs) {
      if (a.trial == b.trial && a.malicious != b.malicious) {
        return fail_with(fmt("trial %zu: malicious sets differ across strategies", a.trial));
      }
    }
  }
  return pass(fmt("%zu CSV bytes identical across 3 runs; malicious sets paired in all %zu trials", first.size(),
                  cfg.trials));
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"decoder matches brute-force posterior", decoder_oracle_equivalence},
      {"degenerate identity and all-ones cases", degenerate_cases},
      {"preset privacy levels and group sizes", privacy_levels},
      {"threshold monotonicity of exact rates", threshold_monotonicity},
      {"MNIST reproduction", mnist_reproduction},
      {"synthetic end-to-end defense", synthetic_end_to_end},
      {"robustness to prior mismatch", mismatch_robustness},
      {"testing-round communication cost", communication_cost},
      {"determinism and paired seeding", determinism},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = fail_with(std::string("exception: ") + e.what());
    }
    const char* tag = o.verdict == Verdict::kPass ? "PASS" : o.verdict == Verdict::kFail ? "FAIL" : "SKIP";
    if (o.verdict == Verdict::kFail) ++failures;
    std::printf("%s %zu: %s: %s\n", tag, k + 1, criteria[k].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
