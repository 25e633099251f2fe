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

#include <gtest/gtest.h>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "gtfl/error.h"

namespace gtfl::flsim {
namespace {

namespace fs = std::filesystem;

void put_be32(std::ofstream& out, std::uint32_t v) {
  const unsigned char b[4] = {static_cast<unsigned char>(v >> 24), static_cast<unsigned char>(v >> 16),
                              static_cast<unsigned char>(v >> 8), static_cast<unsigned char>(v)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

class IdxFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("gtfl_idx_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // count 2x3 images with pixel values k*10 + i and labels `labels`.
  void write(const std::string& stem, std::uint32_t image_magic, std::uint32_t label_magic,
             const std::vector<std::uint8_t>& labels, std::size_t truncate_pixels = 0) {
    const std::uint32_t count = static_cast<std::uint32_t>(labels.size());
    std::ofstream img(dir_ / (stem + "-images-idx3-ubyte"), std::ios::binary);
    put_be32(img, image_magic);
    put_be32(img, count);
    put_be32(img, 2);
    put_be32(img, 3);
    for (std::uint32_t k = 0; k < count * 6 - truncate_pixels; ++k) {
      const char px = static_cast<char>((k / 6) * 10 + k % 6);
      img.write(&px, 1);
    }
    std::ofstream lab(dir_ / (stem + "-labels-idx1-ubyte"), std::ios::binary);
    put_be32(lab, label_magic);
    put_be32(lab, count);
    lab.write(reinterpret_cast<const char*>(labels.data()), labels.size());
  }

  fs::path images(const std::string& stem) const { return dir_ / (stem + "-images-idx3-ubyte"); }
  fs::path labels(const std::string& stem) const { return dir_ / (stem + "-labels-idx1-ubyte"); }

  ErrorCode code_of(const std::string& stem) {
    try {
      read_idx(images(stem), labels(stem));
    } catch (const Error& e) {
      return e.code();
    }
    ADD_FAILURE() << "expected an error";
    return ErrorCode::kParseError;
  }

  fs::path dir_;
};

TEST_F(IdxFiles, ReadsWellFormedPair) {
  write("train", kIdxImageMagic, kIdxLabelMagic, {5, 0, 4});
  const auto d = read_idx(images("train"), labels("train"));
  EXPECT_EQ(d.size(), 3u);
  EXPECT_EQ(d.n_features, 6u);
  EXPECT_EQ(d.labels, (std::vector<int>{5, 0, 4}));
  EXPECT_FLOAT_EQ(d.row(1)[2], 12.0f / 255.0f);
}

TEST_F(IdxFiles, BadMagic) {
  write("train", 2049, kIdxLabelMagic, {1});
  EXPECT_EQ(code_of("train"), ErrorCode::kBadMagic);
  write("train", kIdxImageMagic, 2051, {1});
  EXPECT_EQ(code_of("train"), ErrorCode::kBadMagic);
}

TEST_F(IdxFiles, Truncated) {
  write("train", kIdxImageMagic, kIdxLabelMagic, {1, 2}, 3);
  EXPECT_EQ(code_of("train"), ErrorCode::kTruncatedFile);
}

TEST_F(IdxFiles, MissingFile) {
  EXPECT_EQ(code_of("absent"), ErrorCode::kFileMissing);
  EXPECT_FALSE(mnist_available(dir_));
}

TEST_F(IdxFiles, LabelOutOfRange) {
  write("train", kIdxImageMagic, kIdxLabelMagic, {12});
  EXPECT_EQ(code_of("train"), ErrorCode::kInvalidClass);
}

TEST_F(IdxFiles, LoadsStandardLayout) {
  write("train", kIdxImageMagic, kIdxLabelMagic, {1, 2, 3, 4});
  write("t10k", kIdxImageMagic, kIdxLabelMagic, {7});
  ASSERT_TRUE(mnist_available(dir_));
  const auto data = load_mnist(dir_);
  EXPECT_EQ(data.train.size(), 4u);
  EXPECT_EQ(data.test.labels, (std::vector<int>{7}));
}

}  // namespace
}  // namespace gtfl::flsim

namespace gtfl::flsim {
namespace {

fs::path mnist_dir() {
  const char* env = std::getenv("GTFL_MNIST_DIR");
  return env ? fs::path(env) : fs::path(GTFL_TEST_DATA_DIR) / "mnist";
}

TEST(CanonicalMnistTest, CountsAndFirstLabel) {
  if (!mnist_available(mnist_dir())) GTEST_SKIP() << "MNIST files not found in " << mnist_dir();
  // Independent read of the first label byte, after the 8-byte header.
  std::ifstream raw(mnist_dir() / "train-labels-idx1-ubyte", std::ios::binary);
  raw.seekg(8);
  const int first = raw.get();
  const auto data = load_mnist(mnist_dir());
  EXPECT_EQ(data.train.size(), 60000u);
  EXPECT_EQ(data.test.size(), 10000u);
  EXPECT_EQ(first, 5);
  EXPECT_EQ(data.train.labels.front(), first);
}

}  // namespace
}  // namespace gtfl::flsim
