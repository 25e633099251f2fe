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


#include "gtfl/experiment/experiment.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "gtfl/flsim/dataset.h"
#include "gtfl/flsim/mnist.h"
#include "gtfl/rng.h"

namespace gtfl::experiment {

namespace {

constexpr std::uint64_t kTrialStream = 0x7472;

flsim::Federation build_federation(const ExperimentConfig& cfg, const flsim::MnistData* mnist,
                                   std::uint64_t seed) {
  flsim::Federation fed;
  if (mnist) {
    fed = flsim::make_federation_from_pool(mnist->train, mnist->test, cfg.n, cfg.validation_size, seed);
  } else {
    flsim::SyntheticSpec spec;
    spec.n_clients = cfg.n;
    spec.n_classes = cfg.n_classes;
    spec.n_features = cfg.n_features;
    spec.samples_per_client = cfg.samples_per_client;
    spec.cluster_separation = cfg.cluster_separation;
    spec.validation_size = cfg.validation_size;
    spec.test_size = cfg.test_size;
    fed = flsim::make_synthetic_federation(spec, seed);
  }
  flsim::assign_attackers(fed, cfg.n_malicious, cfg.parsed_attack(), seed);
  return fed;
}

std::vector<StrategyRun> run_trial(const ExperimentConfig& cfg, const AssignmentMatrix& a,
                                   const flsim::MnistData* mnist, std::size_t trial) {
  const std::uint64_t seed = trial_seed(cfg.master_seed, trial);
  const flsim::Federation fed = build_federation(cfg, mnist, seed);
  const flsim::ProtocolConfig base = cfg.protocol();
  std::vector<StrategyRun> out;
  for (flsim::Strategy strategy : cfg.parsed_strategies()) {
    if (strategy == flsim::Strategy::kFedGt) {
      for (double lambda : cfg.thresholds) {
        flsim::ProtocolConfig pc = base;
        pc.decoder.threshold = lambda;
        out.push_back({trial, strategy, lambda, fed.malicious(), flsim::run_protocol(fed, a, pc, strategy, seed)});
      }
    } else {
      out.push_back({trial, strategy, std::nullopt, fed.malicious(), flsim::run_protocol(fed, a, base, strategy, seed)});
    }
  }
  return out;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t trial) {
  return derive_seed(master_seed, {kTrialStream, trial});
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const AssignmentMatrix a = cfg.load_matrix();
  std::optional<flsim::MnistData> mnist;
  if (cfg.dataset == "mnist") mnist = flsim::load_mnist(cfg.mnist_path);
  const flsim::MnistData* mnist_ptr = mnist ? &*mnist : nullptr;

  std::vector<std::vector<StrategyRun>> per_trial(cfg.trials);
  std::size_t workers = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, cfg.trials);

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t k = next++; k < cfg.trials; k = next++) {
      try {
        per_trial[k] = run_trial(cfg, a, mnist_ptr, k);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next = cfg.trials;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  ExperimentReport report;
  for (auto& runs : per_trial) {
    for (auto& r : runs) report.runs.push_back(std::move(r));
  }
  return report;
}

}  // namespace gtfl::experiment
