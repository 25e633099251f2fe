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


#ifndef GTFL_BITS_H_
#define GTFL_BITS_H_

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "gtfl/error.h"

namespace gtfl {

// Fixed-length packed bit sequence. The tag parameter keeps defective vectors
// (length n, one bit per client) and syndrome/test vectors (length m, one bit
// per group) from being mixed up at compile time.
template <typename Tag>
class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  Bits(std::initializer_list<int> values) : Bits(values.size()) {
    std::size_t i = 0;
    for (int v : values) set(i++, v != 0);
  }

  static Bits from_vector(const std::vector<int>& values) {
    Bits out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out.set(i, values[i] != 0);
    return out;
  }

  // Parses a string of '0'/'1' characters; bit 0 is the leftmost character.
  static Bits parse(std::string_view text) {
    Bits out(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] != '0' && text[i] != '1') {
        fail(ErrorCode::kParseError,
             "expected a 0/1 string, got '" + std::string(text) + "'");
      }
      out.set(i, text[i] == '1');
    }
    return out;
  }

  // Bit i of the result is bit i of `mask`. Requires size <= 64.
  static Bits from_mask(std::uint64_t mask, std::size_t size) {
    Bits out(size);
    if (size > 0) out.words_[0] = size >= 64 ? mask : mask & ((std::uint64_t{1} << size) - 1);
    return out;
  }

  std::size_t size() const noexcept { return size_; }

  bool operator[](std::size_t i) const noexcept {
    return (words_[i / 64] >> (i % 64)) & 1u;
  }

  void set(std::size_t i, bool value) noexcept {
    const std::uint64_t bit = std::uint64_t{1} << (i % 64);
    if (value) {
      words_[i / 64] |= bit;
    } else {
      words_[i / 64] &= ~bit;
    }
  }

  std::size_t weight() const noexcept {
    std::size_t w = 0;
    for (std::uint64_t word : words_) w += std::popcount(word);
    return w;
  }

  bool all() const noexcept { return weight() == size_; }
  bool none() const noexcept { return weight() == 0; }

  // Integer label sum_i bit_i * 2^i. Requires size <= 64.
  std::uint64_t to_mask() const noexcept { return words_.empty() ? 0 : words_[0]; }

  std::string to_string() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i) s[i] = (*this)[i] ? '1' : '0';
    return s;
  }

  std::vector<int> to_vector() const {
    std::vector<int> v(size_);
    for (std::size_t i = 0; i < size_; ++i) v[i] = (*this)[i] ? 1 : 0;
    return v;
  }

  Bits complement() const {
    Bits out(size_);
    for (std::size_t i = 0; i < size_; ++i) out.set(i, !(*this)[i]);
    return out;
  }

  // Componentwise <=.
  bool is_subset_of(const Bits& other) const noexcept {
    if (other.size_ != size_) return false;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w] & ~other.words_[w]) return false;
    }
    return true;
  }

  friend bool operator==(const Bits&, const Bits&) = default;

  // Lexicographic by position, bit 0 most significant.
  friend std::strong_ordering operator<=>(const Bits& a, const Bits& b) {
    if (auto c = a.size_ <=> b.size_; c != 0) return c;
    for (std::size_t i = 0; i < a.size_; ++i) {
      if (a[i] != b[i]) return a[i] ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return std::strong_ordering::equal;
  }

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct DefectiveTag {};
struct SyndromeTag {};

// d: d_j = 1 iff client j is malicious.
using DefectiveVector = Bits<DefectiveTag>;
// s (noiseless) or t (observed test outcomes): one bit per test group.
using SyndromeVector = Bits<SyndromeTag>;

}  // namespace gtfl

#endif  // GTFL_BITS_H_
