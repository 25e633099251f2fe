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


#include "gtfl/flsim/mnist.h"

#include <array>
#include <fstream>
#include <iterator>
#include <vector>

#include "gtfl/error.h"

namespace gtfl::flsim {

namespace {

std::vector<unsigned char> read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kFileMissing, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::uint32_t read_be32(const std::vector<unsigned char>& bytes, std::size_t offset,
                        const std::filesystem::path& path) {
  if (bytes.size() < offset + 4) fail(ErrorCode::kTruncatedFile, path.string() + ": header cut short");
  return (std::uint32_t{bytes[offset]} << 24) | (std::uint32_t{bytes[offset + 1]} << 16) |
         (std::uint32_t{bytes[offset + 2]} << 8) | std::uint32_t{bytes[offset + 3]};
}

}  // namespace

Dataset read_idx(const std::filesystem::path& images, const std::filesystem::path& labels,
                 int n_classes) {
  const auto image_bytes = read_all(images);
  const auto label_bytes = read_all(labels);

  if (read_be32(image_bytes, 0, images) != kIdxImageMagic) {
    fail(ErrorCode::kBadMagic, images.string() + " is not an IDX image file");
  }
  if (read_be32(label_bytes, 0, labels) != kIdxLabelMagic) {
    fail(ErrorCode::kBadMagic, labels.string() + " is not an IDX label file");
  }
  const std::size_t count = read_be32(image_bytes, 4, images);
  const std::size_t rows = read_be32(image_bytes, 8, images);
  const std::size_t cols = read_be32(image_bytes, 12, images);
  const std::size_t label_count = read_be32(label_bytes, 4, labels);
  if (label_count != count) {
    fail(ErrorCode::kDimensionMismatch, "image and label files disagree on the example count");
  }
  const std::size_t pixels = rows * cols;
  if (image_bytes.size() < 16 + count * pixels) {
    fail(ErrorCode::kTruncatedFile, images.string() + ": pixel data cut short");
  }
  if (label_bytes.size() < 8 + count) fail(ErrorCode::kTruncatedFile, labels.string() + ": labels cut short");

  Dataset out;
  out.n_features = pixels;
  out.n_classes = n_classes;
  out.features.resize(count * pixels);
  out.labels.resize(count);
  for (std::size_t i = 0; i < count * pixels; ++i) {
    out.features[i] = static_cast<float>(image_bytes[16 + i]) / 255.0f;
  }
  for (std::size_t i = 0; i < count; ++i) {
    const int label = label_bytes[8 + i];
    if (label >= n_classes) fail(ErrorCode::kInvalidClass, labels.string() + ": label out of range");
    out.labels[i] = label;
  }
  return out;
}

MnistData load_mnist(const std::filesystem::path& dir) {
  return {read_idx(dir / "train-images-idx3-ubyte", dir / "train-labels-idx1-ubyte"),
          read_idx(dir / "t10k-images-idx3-ubyte", dir / "t10k-labels-idx1-ubyte")};
}

bool mnist_available(const std::filesystem::path& dir) {
  for (const char* name : {"train-images-idx3-ubyte", "train-labels-idx1-ubyte", "t10k-images-idx3-ubyte",
                           "t10k-labels-idx1-ubyte"}) {
    if (!std::filesystem::exists(dir / name)) return false;
  }
  return true;
}

}  // namespace gtfl::flsim
