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


#ifndef GTFL_TRELLIS_H_
#define GTFL_TRELLIS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gtfl/bits.h"
#include "gtfl/gf2.h"

namespace gtfl {

// Layered graph over partial syndromes. Layer l holds every value of
// OR_{j<=l} (d_j AND a_j) reachable from the all-zero state, labelled by the
// integer sum_i s_i 2^i (group i -> bit i). Each state at layer l-1 has one
// 0-labelled edge (to itself) and one 1-labelled edge (to itself OR column l).
// Only forward-reachable states are materialised.
class Trellis {
 public:
  static constexpr std::size_t kMaxGroups = 20;

  // Indices into states(layer - 1) and states(layer).
  struct Edge {
    std::uint32_t from;
    std::uint32_t to;
  };

  std::size_t depth() const noexcept { return layers_.size() - 1; }  // n
  std::size_t groups() const noexcept { return groups_; }             // m

  // Sorted state labels at `layer` in [0, n].
  const std::vector<std::uint64_t>& states(std::size_t layer) const { return layers_[layer]; }

  // Edges from layer-1 to layer (layer in [1, n]) carrying `label`. Entry k
  // starts at states(layer-1)[k].
  std::span<const Edge> edges(std::size_t layer, int label) const {
    return label == 0 ? edges0_[layer - 1] : edges1_[layer - 1];
  }

  // Column mask of client l (0-based) that labels layer l + 1.
  std::uint64_t column(std::size_t client) const { return columns_[client]; }

  std::optional<std::size_t> index_of(std::size_t layer, std::uint64_t state) const;

  std::size_t total_states() const noexcept;

  // Text dump: one "layer l: <states>" line per layer followed by its
  // incoming edges as "  from -label-> to".
  std::string dump() const;

 private:
  friend Trellis build_trellis(const AssignmentMatrix& a);

  std::size_t groups_ = 0;
  std::vector<std::vector<std::uint64_t>> layers_;
  std::vector<std::vector<Edge>> edges0_;
  std::vector<std::vector<Edge>> edges1_;
  std::vector<std::uint64_t> columns_;
};

// Throws StateSpaceTooLarge when m > Trellis::kMaxGroups.
Trellis build_trellis(const AssignmentMatrix& a);

inline constexpr std::size_t kMaxEnumerationClients = 24;

// All defective vectors d with d OR A^T = t, read off as the label sequences
// of root-to-t paths. Sorted ascending. Throws UnreachableSyndrome if t is
// not a final state and OutputTooLarge for n > kMaxEnumerationClients.
std::vector<DefectiveVector> compatible_defectives(const SyndromeVector& t, const Trellis& trellis);

}  // namespace gtfl

#endif  // GTFL_TRELLIS_H_
