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


#include "gtfl/group_test.h"

#include <algorithm>

#include "gtfl/error.h"

namespace gtfl {

SyndromeVector threshold_test(std::span<const double> metrics, double rho) {
  if (metrics.empty()) fail(ErrorCode::kDimensionMismatch, "need at least one group metric");
  if (!(rho >= 0.0 && rho <= 1.0)) fail(ErrorCode::kInvalidConfig, "rho must lie in [0, 1]");
  const double best = *std::max_element(metrics.begin(), metrics.end());
  const double cut = rho * best;
  SyndromeVector t(metrics.size());
  for (std::size_t i = 0; i < metrics.size(); ++i) t.set(i, !(metrics[i] >= cut));
  return t;
}

SyndromeVector simulate_noisy_tests(const SyndromeVector& s, double p, Rng& rng) {
  SyndromeVector t = s;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (rng.bernoulli(p)) t.set(i, !s[i]);
  }
  return t;
}

SyndromeVector simulate_noisy_tests(const SyndromeVector& s, double p, std::uint64_t seed) {
  Rng rng(seed);
  return simulate_noisy_tests(s, p, rng);
}

double ConfusionCounts::p_md() const noexcept {
  return static_cast<double>(misdetections) / static_cast<double>(std::max<std::size_t>(n_malicious, 1));
}

double ConfusionCounts::p_fa() const noexcept {
  return static_cast<double>(false_alarms) /
         static_cast<double>(std::max<std::size_t>(n - n_malicious, 1));
}

double ConfusionCounts::p_md_population() const noexcept {
  return n == 0 ? 0.0 : static_cast<double>(misdetections) / static_cast<double>(n);
}

double ConfusionCounts::p_fa_population() const noexcept {
  return n == 0 ? 0.0 : static_cast<double>(false_alarms) / static_cast<double>(n);
}

ConfusionCounts confusion(const DefectiveVector& d, const DefectiveVector& d_hat) {
  if (d.size() != d_hat.size()) fail(ErrorCode::kDimensionMismatch, "d and d_hat differ in length");
  ConfusionCounts c;
  c.n = d.size();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i]) {
      ++c.n_malicious;
      if (!d_hat[i]) ++c.misdetections;
    } else if (d_hat[i]) {
      ++c.false_alarms;
    }
  }
  return c;
}

}  // namespace gtfl
