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


#ifndef GTFL_GF2_H_
#define GTFL_GF2_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gtfl/bits.h"

namespace gtfl {

// Polynomial over GF(2), coefficients stored lowest degree first and trimmed
// so the leading coefficient of a nonzero polynomial is always 1.
class Gf2Poly {
 public:
  static constexpr int kZeroDegree = -1;

  Gf2Poly() = default;

  static Gf2Poly from_coefficients(const std::vector<int>& low_to_high);
  static Gf2Poly from_exponents(std::initializer_list<int> exponents);
  // Bit i of `mask` is the coefficient of x^i.
  static Gf2Poly from_mask(std::uint64_t mask);
  // x^n + 1.
  static Gf2Poly binomial(int n);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool coefficient(int i) const noexcept {
    return i >= 0 && i < static_cast<int>(coeffs_.size()) && coeffs_[i] != 0;
  }
  int weight() const noexcept;
  const std::vector<std::uint8_t>& coefficients() const noexcept { return coeffs_; }

  friend Gf2Poly operator+(const Gf2Poly& a, const Gf2Poly& b);
  friend Gf2Poly operator*(const Gf2Poly& a, const Gf2Poly& b);
  friend bool operator==(const Gf2Poly&, const Gf2Poly&) = default;

  // Returns (quotient, remainder). Throws DimensionMismatch on a zero divisor.
  std::pair<Gf2Poly, Gf2Poly> divmod(const Gf2Poly& divisor) const;

  // e.g. "x^8 + x^7 + x^6 + x^4 + 1".
  std::string to_string() const;

 private:
  void trim();
  std::vector<std::uint8_t> coeffs_;
};

// m x n binary client-to-group assignment. Entry (i, j) is 1 when client j
// takes part in test group i. Rows are bit-packed; a per-column m-bit mask is
// cached so the syndrome and trellis code can OR a whole column in one step.
//
// Every row and every column has weight >= 1, and m <= 64.
class AssignmentMatrix {
 public:
  static constexpr std::size_t kMaxRows = 64;

  static AssignmentMatrix from_dense(const std::vector<std::vector<int>>& rows);
  static AssignmentMatrix identity(std::size_t n);
  static AssignmentMatrix all_ones(std::size_t n);

  // Text format: "m n" on the first line, then m lines of n 0/1 digits
  // separated by spaces.
  static AssignmentMatrix parse(std::string_view text);
  static AssignmentMatrix load(const std::filesystem::path& path);
  std::string serialize() const;

  std::size_t rows() const noexcept { return m_; }
  std::size_t cols() const noexcept { return n_; }

  bool at(std::size_t i, std::size_t j) const noexcept {
    return (bits_[i * words_per_row_ + j / 64] >> (j % 64)) & 1u;
  }

  // Bit i set iff client j is in group i.
  std::uint64_t column_mask(std::size_t j) const noexcept { return column_masks_[j]; }

  std::size_t row_weight(std::size_t i) const noexcept;
  std::size_t column_weight(std::size_t j) const noexcept;
  // Client indices of group i, ascending.
  std::vector<std::size_t> group(std::size_t i) const;
  std::vector<std::vector<int>> to_dense() const;

  // Packed words of row i (bit j of the row is bit j%64 of word j/64).
  const std::uint64_t* row_words(std::size_t i) const noexcept {
    return bits_.data() + i * words_per_row_;
  }
  std::size_t words_per_row() const noexcept { return words_per_row_; }

  friend bool operator==(const AssignmentMatrix& a, const AssignmentMatrix& b) {
    return a.m_ == b.m_ && a.n_ == b.n_ && a.bits_ == b.bits_;
  }

 private:
  AssignmentMatrix(std::size_t m, std::size_t n);
  void validate_and_index();

  std::size_t m_ = 0;
  std::size_t n_ = 0;
  std::size_t words_per_row_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint64_t> column_masks_;
};

// s_i = OR_{j in P_i} d_j, computed by OR-ing column masks.
SyndromeVector syndrome(const DefectiveVector& d, const AssignmentMatrix& a);

// Same quantity via an explicit per-group loop over members. Kept as an
// independent route for cross-checking syndrome().
SyndromeVector syndrome_by_groups(const DefectiveVector& d, const AssignmentMatrix& a);

// Parity-check matrix of the length-n cyclic code generated by g: row i is
// the reversed check polynomial h(x) = (x^n + 1) / g(x) shifted right by i.
// Yields n - deg(g) groups of weight(h) clients each.
AssignmentMatrix cyclic_parity_check(int n, const Gf2Poly& generator);

// (n - r) x n generator matrix whose rows are shifts of g (r = deg g). Not an
// assignment matrix; used to check H * G^T = 0.
std::vector<std::vector<int>> cyclic_generator_matrix(int n, const Gf2Poly& generator);

// Check polynomial (x^n + 1) / g(x); throws NotADivisor / DegenerateCode.
Gf2Poly check_polynomial(int n, const Gf2Poly& generator);

inline constexpr std::size_t kMaxPrivacyRows = 24;

// Minimum nonzero Hamming weight over the GF(2) row span of A: the fewest
// client models any combination of group aggregates can isolate. Enumerates
// all 2^m - 1 nonzero row combinations, so m is capped at kMaxPrivacyRows.
std::size_t privacy_level(const AssignmentMatrix& a);

// Named presets: bch15_7, cyclic15_9, cyclic15_11, bch31_21, identity(n),
// allones(n).
AssignmentMatrix preset(std::string_view name);
// Generator polynomial behind a cyclic preset.
Gf2Poly preset_generator(std::string_view name);
std::vector<std::string> preset_names();

// Resolves a preset name, falling back to reading a matrix file.
AssignmentMatrix load_matrix(std::string_view preset_or_path);

}  // namespace gtfl

#endif  // GTFL_GF2_H_
