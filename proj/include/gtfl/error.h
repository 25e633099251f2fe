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


#ifndef GTFL_ERROR_H_
#define GTFL_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace gtfl {

enum class ErrorCode {
  kEmptyRow,
  kEmptyColumn,
  kRaggedInput,
  kNotADivisor,
  kDegenerateCode,
  kDimensionMismatch,
  kRowSpanTooLarge,
  kStateSpaceTooLarge,
  kUnreachableSyndrome,
  kOutputTooLarge,
  kAllPathsZeroProbability,
  kInputTooLarge,
  kInvalidConfig,
  kInvalidClass,
  kNonFiniteLoss,
  kEmptyGroup,
  kEmptySourceClass,
  kInvalidCounts,
  kFileMissing,
  kBadMagic,
  kTruncatedFile,
  kParseError,
};

std::string_view error_code_name(ErrorCode code);

// Every failure surfaced by the library carries one of the codes above so
// callers (and tests) can branch on the kind without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace gtfl

#endif  // GTFL_ERROR_H_
