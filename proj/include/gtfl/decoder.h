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


#ifndef GTFL_DECODER_H_
#define GTFL_DECODER_H_

#include <cstddef>
#include <vector>

#include "gtfl/bits.h"
#include "gtfl/gf2.h"
#include "gtfl/trellis.h"

namespace gtfl {

// Decoder parameters. These are what the decoder assumes, which need not
// match how the tests were actually generated.
struct DecoderConfig {
  double prevalence = 0.1;   // delta = Pr(d_i = 1), in (0, 1)
  double crossover = 0.05;   // BSC flip probability p, in [0, 0.5)
  double threshold = 0.0;    // Lambda, compared against L^APP

  // Throws InvalidConfig unless 0 < delta < 1, 0 <= p < 0.5, Lambda finite.
  void validate() const;
};

// Prior used when only the number of malicious clients is known: n_m / n,
// or 0.1 when n_m = 0.
double default_prevalence(std::size_t n_malicious, std::size_t n);

// L_i^APP = log Pr(d_i = 0 | t) - log Pr(d_i = 1 | t), natural log, one per
// client, always finite.
using LlrVector = std::vector<double>;

// Magnitude at which LLRs are clamped (infinite values included).
inline constexpr double kLlrMax = 50.0;

struct Decision {
  DefectiveVector d_hat;
  // Set when every client is flagged; callers then run without a defense.
  bool fallback_no_defense = false;
};

// Q(t|s) = prod_i [(1-p) if t_i == s_i else p].
double test_likelihood(const SyndromeVector& t, const SyndromeVector& s, double p);

// A-posteriori LLRs by the forward-backward recursion on `trellis`, with
// branch metric 1-delta / delta on 0 / 1 edges and beta_n(sigma) = Q(t|s(sigma)).
// Forward and backward metrics are rescaled to unit sum per layer.
// Throws AllPathsZeroProbability when no defective vector can explain t
// (only possible with p = 0).
LlrVector forward_backward(const Trellis& trellis, const SyndromeVector& t, const DecoderConfig& cfg);

inline constexpr std::size_t kMaxBruteForceClients = 20;

// Same posterior by summing delta^w(d) (1-delta)^(n-w(d)) Q(t | d OR A^T)
// over all 2^n defective vectors. Reference implementation for tests.
LlrVector brute_force_posterior(const AssignmentMatrix& a, const SyndromeVector& t,
                                const DecoderConfig& cfg);

// d_hat_i = 1 iff L_i < Lambda; ties decide benign.
Decision decide(const LlrVector& llr, double threshold);

// decode = forward_backward + decide, with the protocol's exclusion policy:
// when the tests are inconsistent (every path has zero probability) or every
// client is flagged, nobody is excluded.
struct DecodeOutcome {
  LlrVector llr;  // empty when inconsistent
  Decision decision;
  bool inconsistent = false;

  // Clients to drop from training under the policy above.
  DefectiveVector excluded() const;
};

DecodeOutcome decode(const Trellis& trellis, const SyndromeVector& t, const DecoderConfig& cfg);

}  // namespace gtfl

#endif  // GTFL_DECODER_H_
