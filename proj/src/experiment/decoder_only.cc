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


#include "gtfl/experiment/decoder_only.h"

#include <bit>
#include <cmath>
#include <optional>
#include <unordered_map>

#include "gtfl/error.h"
#include "gtfl/group_test.h"
#include "gtfl/rng.h"
#include "gtfl/trellis.h"

namespace gtfl::experiment {

namespace {

// Decodes each distinct test vector once; nullopt marks an inconsistent one.
class LlrCache {
 public:
  LlrCache(const Trellis& trellis, const DecoderConfig& cfg) : trellis_(trellis), cfg_(cfg) {}

  const std::optional<LlrVector>& get(const SyndromeVector& t) {
    const std::uint64_t key = t.to_mask();
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    DecodeOutcome out = decode(trellis_, t, cfg_);
    std::optional<LlrVector> value;
    if (!out.inconsistent) value = std::move(out.llr);
    return cache_.emplace(key, std::move(value)).first->second;
  }

 private:
  const Trellis& trellis_;
  DecoderConfig cfg_;
  std::unordered_map<std::uint64_t, std::optional<LlrVector>> cache_;
};

struct Accumulator {
  std::vector<double> md;
  std::vector<double> fa;
  double weight = 0.0;
};

void accumulate(Accumulator& acc, const DefectiveVector& d, const std::optional<LlrVector>& llr,
                std::span<const double> thresholds, double weight) {
  const std::size_t n = d.size();
  const std::size_t n_m = d.weight();
  for (std::size_t k = 0; k < thresholds.size(); ++k) {
    DefectiveVector excluded(n);
    if (llr) {
      DecodeOutcome out;
      out.llr = *llr;
      out.decision = decide(*llr, thresholds[k]);
      excluded = out.excluded();
    }
    const ConfusionCounts c = confusion(d, excluded);
    if (n_m > 0) acc.md[k] += weight * static_cast<double>(c.misdetections) / static_cast<double>(n_m);
    if (n_m < n) acc.fa[k] += weight * static_cast<double>(c.false_alarms) / static_cast<double>(n - n_m);
  }
  acc.weight += weight;
}

// Next k-subset of [0, n) in lexicographic order; false after the last one.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

DecoderOnlyMode parse_decoder_only_mode(const std::string& name) {
  if (name == "auto") return DecoderOnlyMode::kAuto;
  if (name == "exhaustive") return DecoderOnlyMode::kExhaustive;
  if (name == "sampling") return DecoderOnlyMode::kSampling;
  fail(ErrorCode::kInvalidConfig, "unknown decoder-only mode '" + name + "'");
}

double exhaustive_size(std::size_t n, std::size_t n_malicious, std::size_t m) {
  double placements = 1.0;
  for (std::size_t i = 0; i < n_malicious; ++i) {
    placements = placements * static_cast<double>(n - i) / static_cast<double>(i + 1);
  }
  return placements * std::ldexp(1.0, static_cast<int>(m));
}

DecoderOnlyResult run_decoder_only(const AssignmentMatrix& a, std::size_t n_malicious, double true_crossover,
                                   const DecoderConfig& decoder, std::span<const double> thresholds,
                                   std::size_t trials, std::uint64_t seed, DecoderOnlyMode mode) {
  const std::size_t n = a.cols();
  const std::size_t m = a.rows();
  if (n_malicious > n) fail(ErrorCode::kInvalidCounts, "n_malicious exceeds n");
  if (!(true_crossover >= 0.0 && true_crossover <= 0.5)) {
    fail(ErrorCode::kInvalidConfig, "true crossover must lie in [0, 0.5]");
  }
  if (thresholds.empty()) fail(ErrorCode::kInvalidConfig, "no thresholds given");
  decoder.validate();

  const bool exhaustive = mode == DecoderOnlyMode::kExhaustive ||
                          (mode == DecoderOnlyMode::kAuto && exhaustive_size(n, n_malicious, m) <= kExhaustiveBudget);
  if (!exhaustive && trials == 0) fail(ErrorCode::kInvalidConfig, "sampling needs at least one trial");

  const Trellis trellis = build_trellis(a);
  LlrCache cache(trellis, decoder);
  Accumulator acc{std::vector<double>(thresholds.size(), 0.0), std::vector<double>(thresholds.size(), 0.0), 0.0};
  DecoderOnlyResult result;
  result.exhaustive = exhaustive;

  if (exhaustive) {
    // Noise pattern weights depend only on their Hamming weight.
    std::vector<double> pattern_prob(m + 1);
    for (std::size_t w = 0; w <= m; ++w) {
      pattern_prob[w] = std::pow(true_crossover, static_cast<double>(w)) *
                        std::pow(1.0 - true_crossover, static_cast<double>(m - w));
    }
    const std::uint64_t n_patterns = std::uint64_t{1} << m;
    std::vector<std::size_t> idx(n_malicious);
    for (std::size_t i = 0; i < n_malicious; ++i) idx[i] = i;
    do {
      DefectiveVector d(n);
      for (std::size_t j : idx) d.set(j, true);
      const std::uint64_t s = syndrome(d, a).to_mask();
      for (std::uint64_t e = 0; e < n_patterns; ++e) {
        const double w = pattern_prob[std::popcount(e)];
        if (w == 0.0) continue;
        const SyndromeVector t = SyndromeVector::from_mask(s ^ e, m);
        accumulate(acc, d, cache.get(t), thresholds, w);
        ++result.draws;
      }
    } while (next_combination(idx, n));
  } else {
    for (std::size_t trial = 0; trial < trials; ++trial) {
      Rng rng(derive_seed(seed, {trial}));
      DefectiveVector d(n);
      for (std::size_t j : rng.sample_without_replacement(n, n_malicious)) d.set(j, true);
      const SyndromeVector t = simulate_noisy_tests(syndrome(d, a), true_crossover, rng);
      accumulate(acc, d, cache.get(t), thresholds, 1.0);
      ++result.draws;
    }
  }

  for (std::size_t k = 0; k < thresholds.size(); ++k) {
    result.points.push_back({thresholds[k], acc.md[k] / acc.weight, acc.fa[k] / acc.weight});
  }
  return result;
}

}  // namespace gtfl::experiment
