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


#include "gtfl/trellis.h"

#include <algorithm>
#include <functional>

namespace gtfl {

std::optional<std::size_t> Trellis::index_of(std::size_t layer, std::uint64_t state) const {
  const auto& layer_states = layers_[layer];
  auto it = std::lower_bound(layer_states.begin(), layer_states.end(), state);
  if (it == layer_states.end() || *it != state) return std::nullopt;
  return static_cast<std::size_t>(it - layer_states.begin());
}

std::size_t Trellis::total_states() const noexcept {
  std::size_t total = 0;
  for (const auto& layer : layers_) total += layer.size();
  return total;
}

std::string Trellis::dump() const {
  std::string out;
  for (std::size_t layer = 0; layer < layers_.size(); ++layer) {
    out += "layer " + std::to_string(layer) + ":";
    for (std::uint64_t s : layers_[layer]) out += " " + std::to_string(s);
    out += "\n";
    if (layer == 0) continue;
    const auto& prev = layers_[layer - 1];
    const auto& cur = layers_[layer];
    for (std::size_t k = 0; k < prev.size(); ++k) {
      for (int label = 0; label < 2; ++label) {
        const Edge& e = edges(layer, label)[k];
        out += "  " + std::to_string(prev[e.from]) + " -" + std::to_string(label) + "-> " +
               std::to_string(cur[e.to]) + "\n";
      }
    }
  }
  return out;
}

Trellis build_trellis(const AssignmentMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (m > Trellis::kMaxGroups) {
    fail(ErrorCode::kStateSpaceTooLarge, "trellis needs m <= " + std::to_string(Trellis::kMaxGroups) +
                                             ", got " + std::to_string(m));
  }
  Trellis t;
  t.groups_ = m;
  t.layers_.reserve(n + 1);
  t.layers_.push_back({0});
  t.edges0_.resize(n);
  t.edges1_.resize(n);

  // Dense label -> index map for the layer under construction.
  std::vector<std::int32_t> slot(std::size_t{1} << m, -1);
  for (std::size_t layer = 1; layer <= n; ++layer) {
    const std::uint64_t column = a.column_mask(layer - 1);
    t.columns_.push_back(column);
    const auto& prev = t.layers_[layer - 1];

    std::vector<std::uint64_t> next;
    next.reserve(std::min(prev.size() * 2, slot.size()));
    for (std::uint64_t s : prev) {
      for (std::uint64_t target : {s, s | column}) {
        if (slot[target] < 0) {
          slot[target] = 0;
          next.push_back(target);
        }
      }
    }
    std::sort(next.begin(), next.end());
    for (std::size_t k = 0; k < next.size(); ++k) slot[next[k]] = static_cast<std::int32_t>(k);

    auto& e0 = t.edges0_[layer - 1];
    auto& e1 = t.edges1_[layer - 1];
    e0.reserve(prev.size());
    e1.reserve(prev.size());
    for (std::size_t k = 0; k < prev.size(); ++k) {
      const auto from = static_cast<std::uint32_t>(k);
      e0.push_back({from, static_cast<std::uint32_t>(slot[prev[k]])});
      e1.push_back({from, static_cast<std::uint32_t>(slot[prev[k] | column])});
    }
    for (std::uint64_t s : next) slot[s] = -1;
    t.layers_.push_back(std::move(next));
  }
  return t;
}

std::vector<DefectiveVector> compatible_defectives(const SyndromeVector& t, const Trellis& trellis) {
  const std::size_t n = trellis.depth();
  if (t.size() != trellis.groups()) {
    fail(ErrorCode::kDimensionMismatch, "test vector length does not match the number of groups");
  }
  if (n > kMaxEnumerationClients) {
    fail(ErrorCode::kOutputTooLarge, "path enumeration is limited to n <= " +
                                         std::to_string(kMaxEnumerationClients));
  }
  const auto target = trellis.index_of(n, t.to_mask());
  if (!target) {
    fail(ErrorCode::kUnreachableSyndrome, "syndrome " + t.to_string() + " is not reachable");
  }

  std::vector<DefectiveVector> out;
  DefectiveVector path(n);
  // Walk backwards from the final state along incoming edges.
  std::function<void(std::size_t, std::uint32_t)> walk = [&](std::size_t layer, std::uint32_t state) {
    if (layer == 0) {
      out.push_back(path);
      return;
    }
    for (int label = 0; label < 2; ++label) {
      for (const auto& e : trellis.edges(layer, label)) {
        if (e.to != state) continue;
        path.set(layer - 1, label == 1);
        walk(layer - 1, e.from);
      }
    }
  };
  walk(n, static_cast<std::uint32_t>(*target));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace gtfl
