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


#include "gtfl/decoder.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <string>

namespace gtfl {

namespace {

// Q(t|s) from the number of disagreeing positions.
double bsc_likelihood(std::size_t mismatches, std::size_t m, double p) {
  if (mismatches == 0) return std::pow(1.0 - p, static_cast<double>(m));
  if (p == 0.0) return 0.0;
  return std::pow(p, static_cast<double>(mismatches)) *
         std::pow(1.0 - p, static_cast<double>(m - mismatches));
}

double llr_from_masses(double mass0, double mass1) {
  if (mass0 == 0.0 && mass1 == 0.0) {
    fail(ErrorCode::kAllPathsZeroProbability, "no defective vector is compatible with the tests");
  }
  if (mass1 == 0.0) return kLlrMax;
  if (mass0 == 0.0) return -kLlrMax;
  return std::clamp(std::log(mass0) - std::log(mass1), -kLlrMax, kLlrMax);
}

// Rescales to unit sum; returns false if everything is zero.
bool normalize(std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  if (!(sum > 0.0)) return false;
  for (double& x : v) x /= sum;
  return true;
}

// Clients with identical columns have identical posteriors. Rounding in the
// per-layer recursion breaks that by a few ulps, so each class of identical
// columns gets the mean of its members.
void equalize_exchangeable(const Trellis& trellis, LlrVector& llr) {
  std::map<std::uint64_t, std::vector<std::size_t>> classes;
  for (std::size_t j = 0; j < llr.size(); ++j) classes[trellis.column(j)].push_back(j);
  for (const auto& [column, members] : classes) {
    if (members.size() < 2) continue;
    double sum = 0.0;
    for (std::size_t j : members) sum += llr[j];
    const double mean = std::clamp(sum / static_cast<double>(members.size()), -kLlrMax, kLlrMax);
    for (std::size_t j : members) llr[j] = mean;
  }
}

}  // namespace

void DecoderConfig::validate() const {
  if (!(prevalence > 0.0 && prevalence < 1.0)) {
    fail(ErrorCode::kInvalidConfig, "prevalence must lie in (0, 1), got " + std::to_string(prevalence));
  }
  if (!(crossover >= 0.0 && crossover < 0.5)) {
    fail(ErrorCode::kInvalidConfig, "crossover must lie in [0, 0.5), got " + std::to_string(crossover));
  }
  if (!std::isfinite(threshold)) fail(ErrorCode::kInvalidConfig, "threshold must be finite");
}

double default_prevalence(std::size_t n_malicious, std::size_t n) {
  if (n_malicious == 0 || n == 0) return 0.1;
  return static_cast<double>(n_malicious) / static_cast<double>(n);
}

double test_likelihood(const SyndromeVector& t, const SyndromeVector& s, double p) {
  if (t.size() != s.size()) fail(ErrorCode::kDimensionMismatch, "t and s differ in length");
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < t.size(); ++i) mismatches += t[i] != s[i];
  return bsc_likelihood(mismatches, t.size(), p);
}

LlrVector forward_backward(const Trellis& trellis, const SyndromeVector& t, const DecoderConfig& cfg) {
  cfg.validate();
  const std::size_t n = trellis.depth();
  const std::size_t m = trellis.groups();
  if (t.size() != m) {
    fail(ErrorCode::kDimensionMismatch, "test vector has length " + std::to_string(t.size()) +
                                            ", trellis has " + std::to_string(m) + " groups");
  }
  const double g0 = 1.0 - cfg.prevalence;
  const double g1 = cfg.prevalence;

  std::vector<std::vector<double>> alpha(n + 1);
  alpha[0] = {1.0};
  for (std::size_t layer = 1; layer <= n; ++layer) {
    auto& cur = alpha[layer];
    cur.assign(trellis.states(layer).size(), 0.0);
    const auto& prev = alpha[layer - 1];
    for (const auto& e : trellis.edges(layer, 0)) cur[e.to] += prev[e.from] * g0;
    for (const auto& e : trellis.edges(layer, 1)) cur[e.to] += prev[e.from] * g1;
    normalize(cur);  // gamma > 0 keeps every forward layer nonzero
  }

  const std::uint64_t tmask = t.to_mask();
  std::vector<double> beta(trellis.states(n).size());
  for (std::size_t k = 0; k < beta.size(); ++k) {
    const auto mismatches = static_cast<std::size_t>(std::popcount(trellis.states(n)[k] ^ tmask));
    beta[k] = bsc_likelihood(mismatches, m, cfg.crossover);
  }
  if (!normalize(beta)) {
    fail(ErrorCode::kAllPathsZeroProbability,
         "test vector " + t.to_string() + " has zero likelihood under a noiseless channel");
  }

  LlrVector llr(n);
  std::vector<double> prev_beta;
  for (std::size_t layer = n; layer >= 1; --layer) {
    const auto& a_prev = alpha[layer - 1];
    double mass0 = 0.0;
    double mass1 = 0.0;
    for (const auto& e : trellis.edges(layer, 0)) mass0 += a_prev[e.from] * g0 * beta[e.to];
    for (const auto& e : trellis.edges(layer, 1)) mass1 += a_prev[e.from] * g1 * beta[e.to];
    llr[layer - 1] = llr_from_masses(mass0, mass1);

    prev_beta.assign(trellis.states(layer - 1).size(), 0.0);
    for (const auto& e : trellis.edges(layer, 0)) prev_beta[e.from] += g0 * beta[e.to];
    for (const auto& e : trellis.edges(layer, 1)) prev_beta[e.from] += g1 * beta[e.to];
    normalize(prev_beta);
    beta.swap(prev_beta);
  }
  equalize_exchangeable(trellis, llr);
  return llr;
}

LlrVector brute_force_posterior(const AssignmentMatrix& a, const SyndromeVector& t,
                                const DecoderConfig& cfg) {
  cfg.validate();
  const std::size_t n = a.cols();
  const std::size_t m = a.rows();
  if (n > kMaxBruteForceClients) {
    fail(ErrorCode::kInputTooLarge, "brute-force posterior needs n <= " +
                                        std::to_string(kMaxBruteForceClients));
  }
  if (t.size() != m) fail(ErrorCode::kDimensionMismatch, "test vector length mismatch");

  std::vector<double> prior_by_weight(n + 1);
  for (std::size_t w = 0; w <= n; ++w) {
    prior_by_weight[w] = std::pow(cfg.prevalence, static_cast<double>(w)) *
                         std::pow(1.0 - cfg.prevalence, static_cast<double>(n - w));
  }
  std::vector<double> mass0(n, 0.0);
  std::vector<double> mass1(n, 0.0);
  double total = 0.0;
  const std::uint64_t tmask = t.to_mask();
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t d = 0; d < count; ++d) {
    std::uint64_t s = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if ((d >> j) & 1u) s |= a.column_mask(j);
    }
    const auto mismatches = static_cast<std::size_t>(std::popcount(s ^ tmask));
    const double weight =
        prior_by_weight[std::popcount(d)] * bsc_likelihood(mismatches, m, cfg.crossover);
    if (weight == 0.0) continue;
    total += weight;
    for (std::size_t j = 0; j < n; ++j) {
      ((d >> j) & 1u ? mass1[j] : mass0[j]) += weight;
    }
  }
  if (total == 0.0) {
    fail(ErrorCode::kAllPathsZeroProbability, "no defective vector is compatible with the tests");
  }
  LlrVector llr(n);
  for (std::size_t j = 0; j < n; ++j) llr[j] = llr_from_masses(mass0[j], mass1[j]);
  return llr;
}

Decision decide(const LlrVector& llr, double threshold) {
  Decision out{DefectiveVector(llr.size()), false};
  for (std::size_t i = 0; i < llr.size(); ++i) out.d_hat.set(i, llr[i] < threshold);
  out.fallback_no_defense = !llr.empty() && out.d_hat.all();
  return out;
}

DefectiveVector DecodeOutcome::excluded() const {
  if (inconsistent || decision.fallback_no_defense) return DefectiveVector(decision.d_hat.size());
  return decision.d_hat;
}

DecodeOutcome decode(const Trellis& trellis, const SyndromeVector& t, const DecoderConfig& cfg) {
  DecodeOutcome out;
  try {
    out.llr = forward_backward(trellis, t, cfg);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kAllPathsZeroProbability) throw;
    out.inconsistent = true;
    out.decision.d_hat = DefectiveVector(trellis.depth());
    return out;
  }
  out.decision = decide(out.llr, cfg.threshold);
  return out;
}

}  // namespace gtfl
