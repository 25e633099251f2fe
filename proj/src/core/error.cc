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


#include "gtfl/error.h"

#include <string>

namespace gtfl {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyRow: return "EmptyRow";
    case ErrorCode::kEmptyColumn: return "EmptyColumn";
    case ErrorCode::kRaggedInput: return "RaggedInput";
    case ErrorCode::kNotADivisor: return "NotADivisor";
    case ErrorCode::kDegenerateCode: return "DegenerateCode";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kRowSpanTooLarge: return "RowSpanTooLarge";
    case ErrorCode::kStateSpaceTooLarge: return "StateSpaceTooLarge";
    case ErrorCode::kUnreachableSyndrome: return "UnreachableSyndrome";
    case ErrorCode::kOutputTooLarge: return "OutputTooLarge";
    case ErrorCode::kAllPathsZeroProbability: return "AllPathsZeroProbability";
    case ErrorCode::kInputTooLarge: return "InputTooLarge";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kInvalidClass: return "InvalidClass";
    case ErrorCode::kNonFiniteLoss: return "NonFiniteLoss";
    case ErrorCode::kEmptyGroup: return "EmptyGroup";
    case ErrorCode::kEmptySourceClass: return "EmptySourceClass";
    case ErrorCode::kInvalidCounts: return "InvalidCounts";
    case ErrorCode::kFileMissing: return "FileMissing";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kTruncatedFile: return "TruncatedFile";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, std::string(error_code_name(code)) + ": " + message);
}

}  // namespace gtfl
