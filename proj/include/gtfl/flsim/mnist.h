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


#ifndef GTFL_FLSIM_MNIST_H_
#define GTFL_FLSIM_MNIST_H_

#include <filesystem>

#include "gtfl/flsim/dataset.h"

namespace gtfl::flsim {

inline constexpr std::uint32_t kIdxImageMagic = 2051;
inline constexpr std::uint32_t kIdxLabelMagic = 2049;

// Reads an IDX image/label file pair (big-endian headers) into a dataset with
// pixels scaled to [0, 1]. Throws FileMissing, BadMagic or TruncatedFile.
Dataset read_idx(const std::filesystem::path& images, const std::filesystem::path& labels,
                 int n_classes = 10);

struct MnistData {
  Dataset train;
  Dataset test;
};

// Expects the four standard files (train-images-idx3-ubyte, ...) in `dir`.
MnistData load_mnist(const std::filesystem::path& dir);

bool mnist_available(const std::filesystem::path& dir);

}  // namespace gtfl::flsim

#endif  // GTFL_FLSIM_MNIST_H_
