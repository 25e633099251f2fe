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


#include "gtfl/gf2.h"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace gtfl {

// ---------------------------------------------------------------------------
// Gf2Poly

Gf2Poly Gf2Poly::from_coefficients(const std::vector<int>& low_to_high) {
  Gf2Poly p;
  p.coeffs_.reserve(low_to_high.size());
  for (int c : low_to_high) p.coeffs_.push_back(c & 1);
  p.trim();
  return p;
}

Gf2Poly Gf2Poly::from_exponents(std::initializer_list<int> exponents) {
  Gf2Poly p;
  for (int e : exponents) {
    if (e < 0) fail(ErrorCode::kParseError, "negative exponent");
    if (static_cast<int>(p.coeffs_.size()) <= e) p.coeffs_.resize(e + 1, 0);
    p.coeffs_[e] ^= 1;
  }
  p.trim();
  return p;
}

Gf2Poly Gf2Poly::from_mask(std::uint64_t mask) {
  Gf2Poly p;
  for (int i = 0; i < 64; ++i) p.coeffs_.push_back((mask >> i) & 1u);
  p.trim();
  return p;
}

Gf2Poly Gf2Poly::binomial(int n) {
  Gf2Poly p;
  p.coeffs_.assign(n + 1, 0);
  p.coeffs_[0] ^= 1;
  p.coeffs_[n] ^= 1;
  p.trim();
  return p;
}

int Gf2Poly::weight() const noexcept {
  return static_cast<int>(std::count(coeffs_.begin(), coeffs_.end(), 1));
}

void Gf2Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Gf2Poly operator+(const Gf2Poly& a, const Gf2Poly& b) {
  Gf2Poly out;
  out.coeffs_.assign(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out.coeffs_[i] ^= a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out.coeffs_[i] ^= b.coeffs_[i];
  out.trim();
  return out;
}

Gf2Poly operator*(const Gf2Poly& a, const Gf2Poly& b) {
  Gf2Poly out;
  if (a.is_zero() || b.is_zero()) return out;
  out.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (!a.coeffs_[i]) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out.coeffs_[i + j] ^= b.coeffs_[j];
  }
  out.trim();
  return out;
}

std::pair<Gf2Poly, Gf2Poly> Gf2Poly::divmod(const Gf2Poly& divisor) const {
  if (divisor.is_zero()) fail(ErrorCode::kDimensionMismatch, "division by the zero polynomial");
  Gf2Poly rem = *this;
  Gf2Poly quot;
  const int dd = divisor.degree();
  if (degree() >= dd) quot.coeffs_.assign(degree() - dd + 1, 0);
  for (int top = rem.degree(); top >= dd; --top) {
    if (!rem.coeffs_[top]) continue;
    const int shift = top - dd;
    quot.coeffs_[shift] = 1;
    for (int k = 0; k <= dd; ++k) rem.coeffs_[shift + k] ^= divisor.coeffs_[k];
  }
  rem.trim();
  quot.trim();
  return {quot, rem};
}

std::string Gf2Poly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    if (!coeffs_[i]) continue;
    if (!out.empty()) out += " + ";
    if (i == 0) {
      out += "1";
    } else if (i == 1) {
      out += "x";
    } else {
      out += "x^" + std::to_string(i);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// AssignmentMatrix

AssignmentMatrix::AssignmentMatrix(std::size_t m, std::size_t n)
    : m_(m), n_(n), words_per_row_((n + 63) / 64), bits_(m * ((n + 63) / 64), 0) {}

AssignmentMatrix AssignmentMatrix::from_dense(const std::vector<std::vector<int>>& rows) {
  if (rows.empty()) fail(ErrorCode::kRaggedInput, "assignment matrix needs at least one row");
  const std::size_t n = rows.front().size();
  if (n == 0) fail(ErrorCode::kRaggedInput, "assignment matrix needs at least one column");
  for (const auto& row : rows) {
    if (row.size() != n) fail(ErrorCode::kRaggedInput, "rows have different lengths");
  }
  if (rows.size() > kMaxRows) {
    fail(ErrorCode::kInputTooLarge,
         "at most " + std::to_string(kMaxRows) + " test groups are supported");
  }
  AssignmentMatrix a(rows.size(), n);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (rows[i][j] != 0 && rows[i][j] != 1) {
        fail(ErrorCode::kParseError, "matrix entries must be 0 or 1");
      }
      if (rows[i][j]) a.bits_[i * a.words_per_row_ + j / 64] |= std::uint64_t{1} << (j % 64);
    }
  }
  a.validate_and_index();
  return a;
}

AssignmentMatrix AssignmentMatrix::identity(std::size_t n) {
  std::vector<std::vector<int>> rows(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) rows[i][i] = 1;
  return from_dense(rows);
}

AssignmentMatrix AssignmentMatrix::all_ones(std::size_t n) {
  return from_dense({std::vector<int>(n, 1)});
}

void AssignmentMatrix::validate_and_index() {
  for (std::size_t i = 0; i < m_; ++i) {
    if (row_weight(i) == 0) fail(ErrorCode::kEmptyRow, "group " + std::to_string(i) + " has no clients");
  }
  column_masks_.assign(n_, 0);
  for (std::size_t i = 0; i < m_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (at(i, j)) column_masks_[j] |= std::uint64_t{1} << i;
    }
  }
  for (std::size_t j = 0; j < n_; ++j) {
    if (column_masks_[j] == 0) {
      fail(ErrorCode::kEmptyColumn, "client " + std::to_string(j) + " is not in any group");
    }
  }
}

std::size_t AssignmentMatrix::row_weight(std::size_t i) const noexcept {
  std::size_t w = 0;
  for (std::size_t k = 0; k < words_per_row_; ++k) w += std::popcount(bits_[i * words_per_row_ + k]);
  return w;
}

std::size_t AssignmentMatrix::column_weight(std::size_t j) const noexcept {
  return std::popcount(column_masks_[j]);
}

std::vector<std::size_t> AssignmentMatrix::group(std::size_t i) const {
  std::vector<std::size_t> members;
  for (std::size_t j = 0; j < n_; ++j) {
    if (at(i, j)) members.push_back(j);
  }
  return members;
}

std::vector<std::vector<int>> AssignmentMatrix::to_dense() const {
  std::vector<std::vector<int>> rows(m_, std::vector<int>(n_, 0));
  for (std::size_t i = 0; i < m_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) rows[i][j] = at(i, j) ? 1 : 0;
  }
  return rows;
}

AssignmentMatrix AssignmentMatrix::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  long long m = 0;
  long long n = 0;
  if (!(in >> m >> n) || m < 1 || n < 1) {
    fail(ErrorCode::kParseError, "matrix header must be 'm n' with positive counts");
  }
  std::vector<std::vector<int>> rows(m, std::vector<int>(n));
  for (auto& row : rows) {
    for (auto& entry : row) {
      if (!(in >> entry)) fail(ErrorCode::kRaggedInput, "matrix body is shorter than m*n entries");
    }
  }
  std::string extra;
  if (in >> extra) fail(ErrorCode::kRaggedInput, "matrix body is longer than m*n entries");
  return from_dense(rows);
}

AssignmentMatrix AssignmentMatrix::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kFileMissing, "cannot open matrix file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string AssignmentMatrix::serialize() const {
  std::string out = std::to_string(m_) + " " + std::to_string(n_) + "\n";
  for (std::size_t i = 0; i < m_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (j) out += ' ';
      out += at(i, j) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Syndromes

SyndromeVector syndrome(const DefectiveVector& d, const AssignmentMatrix& a) {
  if (d.size() != a.cols()) {
    fail(ErrorCode::kDimensionMismatch, "defective vector has length " + std::to_string(d.size()) +
                                            ", matrix has " + std::to_string(a.cols()) + " columns");
  }
  std::uint64_t acc = 0;
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (d[j]) acc |= a.column_mask(j);
  }
  return SyndromeVector::from_mask(acc, a.rows());
}

SyndromeVector syndrome_by_groups(const DefectiveVector& d, const AssignmentMatrix& a) {
  if (d.size() != a.cols()) fail(ErrorCode::kDimensionMismatch, "defective vector length mismatch");
  SyndromeVector s(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    bool positive = false;
    for (std::size_t j : a.group(i)) positive = positive || d[j];
    s.set(i, positive);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Cyclic codes

Gf2Poly check_polynomial(int n, const Gf2Poly& generator) {
  if (n < 2 || generator.is_zero()) {
    fail(ErrorCode::kDegenerateCode, "block length must be >= 2 and generator nonzero");
  }
  const int r = generator.degree();
  if (r <= 0 || r >= n) {
    fail(ErrorCode::kDegenerateCode, "generator degree " + std::to_string(r) +
                                         " gives dimension outside [1, n-1] for n=" + std::to_string(n));
  }
  auto [h, rem] = Gf2Poly::binomial(n).divmod(generator);
  if (!rem.is_zero()) {
    fail(ErrorCode::kNotADivisor,
         generator.to_string() + " does not divide x^" + std::to_string(n) + " + 1");
  }
  return h;
}

AssignmentMatrix cyclic_parity_check(int n, const Gf2Poly& generator) {
  const Gf2Poly h = check_polynomial(n, generator);
  const int k = h.degree();
  const int m = n - k;
  std::vector<std::vector<int>> rows(m, std::vector<int>(n, 0));
  for (int i = 0; i < m; ++i) {
    for (int t = 0; t <= k; ++t) rows[i][i + t] = h.coefficient(k - t) ? 1 : 0;
  }
  AssignmentMatrix a = AssignmentMatrix::from_dense(rows);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (a.row_weight(i) != static_cast<std::size_t>(h.weight())) {
      fail(ErrorCode::kDegenerateCode, "cyclic parity-check row has unexpected weight");
    }
  }
  return a;
}

std::vector<std::vector<int>> cyclic_generator_matrix(int n, const Gf2Poly& generator) {
  check_polynomial(n, generator);
  const int r = generator.degree();
  const int k = n - r;
  std::vector<std::vector<int>> rows(k, std::vector<int>(n, 0));
  for (int i = 0; i < k; ++i) {
    for (int t = 0; t <= r; ++t) rows[i][i + t] = generator.coefficient(t) ? 1 : 0;
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Privacy level

std::size_t privacy_level(const AssignmentMatrix& a) {
  const std::size_t m = a.rows();
  if (m > kMaxPrivacyRows) {
    fail(ErrorCode::kRowSpanTooLarge, "row span enumeration needs m <= " +
                                          std::to_string(kMaxPrivacyRows) + ", got " + std::to_string(m));
  }
  const std::size_t words = a.words_per_row();
  std::vector<std::uint64_t> acc(words, 0);
  std::size_t best = a.cols() + 1;
  // Gray-code walk: consecutive combinations differ in exactly one row.
  const std::uint64_t total = std::uint64_t{1} << m;
  for (std::uint64_t g = 1; g < total; ++g) {
    const std::size_t flip = std::countr_zero(g);
    const std::uint64_t* row = a.row_words(flip);
    std::size_t w = 0;
    for (std::size_t k = 0; k < words; ++k) {
      acc[k] ^= row[k];
      w += std::popcount(acc[k]);
    }
    if (w > 0 && w < best) best = w;
  }
  // Every row is nonzero, so the span always has a nonzero vector.
  return best;
}

// ---------------------------------------------------------------------------
// Presets

namespace {

struct CyclicPreset {
  int n;
  Gf2Poly generator;
};

// Generators were chosen as products of minimal polynomials so that the
// reversed check polynomial has the group size quoted for each code:
//   bch15_7:     m1*m3 over GF(16), x^4+x+1 primitive     -> 8 groups of 4
//   cyclic15_9:  (x^2+x+1)(x^4+x+1)                       -> 6 groups of 6
//   cyclic15_11: x^4+x+1 (cyclic Hamming code)            -> 4 groups of 8
//   bch31_21:    m1*m3 over GF(32), x^5+x^2+1 primitive   -> 10 groups of 12
const std::map<std::string, CyclicPreset, std::less<>>& cyclic_presets() {
  static const auto* presets = new std::map<std::string, CyclicPreset, std::less<>>{
      {"bch15_7", {15, Gf2Poly::from_exponents({8, 7, 6, 4, 0})}},
      {"cyclic15_9", {15, Gf2Poly::from_exponents({6, 5, 4, 3, 0})}},
      {"cyclic15_11", {15, Gf2Poly::from_exponents({4, 1, 0})}},
      {"bch31_21", {31, Gf2Poly::from_exponents({10, 9, 8, 6, 5, 3, 0})}},
  };
  return *presets;
}

// Parses "name(k)" and returns k, or -1 if `text` does not have that shape.
long parse_sized(std::string_view text, std::string_view name) {
  if (text.size() < name.size() + 3 || text.substr(0, name.size()) != name ||
      text[name.size()] != '(' || text.back() != ')') {
    return -1;
  }
  const std::string_view digits = text.substr(name.size() + 1, text.size() - name.size() - 2);
  long value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || value < 1) return -1;
  return value;
}

}  // namespace

AssignmentMatrix preset(std::string_view name) {
  const auto& cyclic = cyclic_presets();
  if (auto it = cyclic.find(name); it != cyclic.end()) {
    return cyclic_parity_check(it->second.n, it->second.generator);
  }
  if (long n = parse_sized(name, "identity"); n > 0) return AssignmentMatrix::identity(n);
  if (long n = parse_sized(name, "allones"); n > 0) return AssignmentMatrix::all_ones(n);
  fail(ErrorCode::kInvalidConfig, "unknown matrix preset '" + std::string(name) + "'");
}

Gf2Poly preset_generator(std::string_view name) {
  const auto& cyclic = cyclic_presets();
  auto it = cyclic.find(name);
  if (it == cyclic.end()) {
    fail(ErrorCode::kInvalidConfig, "'" + std::string(name) + "' is not a cyclic-code preset");
  }
  return it->second.generator;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, unused] : cyclic_presets()) names.push_back(name);
  names.push_back("identity(n)");
  names.push_back("allones(n)");
  return names;
}

AssignmentMatrix load_matrix(std::string_view preset_or_path) {
  try {
    return preset(preset_or_path);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kInvalidConfig) throw;
  }
  if (!std::filesystem::exists(std::filesystem::path(preset_or_path))) {
    fail(ErrorCode::kFileMissing,
         "'" + std::string(preset_or_path) + "' is neither a preset nor an existing matrix file");
  }
  return AssignmentMatrix::load(std::filesystem::path(preset_or_path));
}

}  // namespace gtfl
