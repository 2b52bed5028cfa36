/*
 * Copyright 2026 The lanehough Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <fstream>
#include <numeric>
#include <random>

#include "lanehough/imgio.hpp"
#include "test_support.hpp"

namespace lanehough {
namespace {

using testing::TempDir;

void write_raw(const std::filesystem::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary);
  out << bytes;
}

TEST(GrayImage, RejectsWrongBufferSize) {
  EXPECT_THROW(GrayImage(2, 2, std::vector<std::uint8_t>(3)), DimensionError);
  EXPECT_THROW(GrayImage(0, 2), DimensionError);
}

TEST(BinaryImage, RejectsValuesOtherThanZeroAnd255) {
  EXPECT_THROW(BinaryImage(2, 1, std::vector<std::uint8_t>{0, 1}), ParameterError);
  EXPECT_NO_THROW(BinaryImage(2, 1, std::vector<std::uint8_t>{0, 255}));
}

TEST(LoadGray, SmallestLegalPgm) {
  TempDir dir;
  write_raw(dir / "one.pgm", std::string("P5\n1 1\n255\n") + '\0');
  const auto img = load_gray(dir / "one.pgm");
  EXPECT_EQ(img, GrayImage(1, 1, std::vector<std::uint8_t>{0}));
}

TEST(LoadGray, HeaderCommentsAreSkipped) {
  TempDir dir;
  write_raw(dir / "c.pgm", "P5\n# made by hand\n2 1\n255\n\x07\x09");
  EXPECT_EQ(load_gray(dir / "c.pgm"), GrayImage(2, 1, std::vector<std::uint8_t>{7, 9}));
}

TEST(LoadGray, FullSizeFrame) {
  TempDir dir;
  std::mt19937_64 rng(3);
  const auto img = testing::random_gray(512, 512, rng);
  save_image(img, dir / "frame.pgm", ImageFormat::pgm);
  const auto back = load_gray(dir / "frame.pgm");
  EXPECT_EQ(back.width(), 512u);
  EXPECT_EQ(back.height(), 512u);
}

TEST(LoadGray, Errors) {
  TempDir dir;
  EXPECT_THROW(load_gray(dir / "missing.pgm"), IoError);

  write_raw(dir / "ascii.pgm", "P3\n1 1\n255\n0 0 0\n");
  EXPECT_THROW(load_gray(dir / "ascii.pgm"), FormatError);

  write_raw(dir / "maxval.pgm", "P5\n1 1\n65535\n\0\0");
  EXPECT_THROW(load_gray(dir / "maxval.pgm"), FormatError);

  write_raw(dir / "short.pgm", "P5\n4 4\n255\n\x01\x02\x03");
  EXPECT_THROW(load_gray(dir / "short.pgm"), FormatError);

  write_raw(dir / "header.pgm", "P5\nfour 4\n255\n");
  EXPECT_THROW(load_gray(dir / "header.pgm"), FormatError);
}

TEST(SaveImage, OnePixelPgmIsHeaderPlusOneByte) {
  TempDir dir;
  save_image(GrayImage(1, 1, std::vector<std::uint8_t>{42}), dir / "p.pgm", ImageFormat::pgm);
  const std::string expected = "P5\n1 1\n255\n*";
  EXPECT_EQ(std::filesystem::file_size(dir / "p.pgm"), expected.size());
  std::ifstream in(dir / "p.pgm", std::ios::binary);
  std::string got((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(got, expected);
}

TEST(SaveImage, RoundTripIsBitExactInBothFormats) {
  TempDir dir;
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t w = 1 + rng() % 70;
    const std::size_t h = 1 + rng() % 70;
    const auto img = testing::random_gray(w, h, rng);
    save_image(img, dir / "r.pgm", ImageFormat::pgm);
    save_image(img, dir / "r.png", ImageFormat::png);
    EXPECT_EQ(load_gray(dir / "r.pgm"), img);
    EXPECT_EQ(load_gray(dir / "r.png"), img);
  }
}

TEST(SaveImage, RgbAsPgmIsUsageError) {
  TempDir dir;
  EXPECT_THROW(save_image(RgbImage(2, 2), dir / "x.pgm", ImageFormat::pgm), UsageError);
}

TEST(SaveImage, UnwritablePathIsIoError) {
  TempDir dir;
  const auto img = GrayImage(2, 2);
  EXPECT_THROW(save_image(img, dir / "no" / "such" / "x.pgm", ImageFormat::pgm), IoError);
  EXPECT_THROW(save_image(img, dir / "no" / "such" / "x.png", ImageFormat::png), IoError);
}

TEST(LoadGray, ColorPngUsesRoundedLuma) {
  TempDir dir;
  RgbImage rgb(3, 1);
  rgb.set(0, 0, {255, 0, 0});
  rgb.set(1, 0, {0, 255, 0});
  rgb.set(2, 0, {10, 20, 30});
  save_image(rgb, dir / "c.png", ImageFormat::png);
  // 0.299*255 = 76.245, 0.587*255 = 149.685, 2.99 + 11.74 + 3.42 = 18.15
  EXPECT_EQ(load_gray(dir / "c.png"), GrayImage(3, 1, std::vector<std::uint8_t>{76, 150, 18}));
}

TEST(ZeroPad, SinglePixel) {
  const auto padded = zero_pad(GrayImage(1, 1, std::vector<std::uint8_t>{5}), 1);
  EXPECT_EQ(padded, GrayImage(3, 3, std::vector<std::uint8_t>{0, 0, 0, 0, 5, 0, 0, 0, 0}));
}

TEST(ZeroPad, BorderZeroIsIdentity) {
  std::mt19937_64 rng(5);
  const auto img = testing::random_gray(7, 4, rng);
  EXPECT_EQ(zero_pad(img, 0), img);
}

TEST(ZeroPad, PreservesInteriorAndSum) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t w = 1 + rng() % 40;
    const std::size_t h = 1 + rng() % 40;
    const std::size_t b = rng() % 4;
    const auto img = testing::random_gray(w, h, rng);
    const auto padded = zero_pad(img, b);
    ASSERT_EQ(padded.width(), w + 2 * b);
    ASSERT_EQ(padded.height(), h + 2 * b);
    for (std::size_t y = 0; y < h; ++y) {
      for (std::size_t x = 0; x < w; ++x) ASSERT_EQ(padded(x + b, y + b), img(x, y));
    }
    auto sum = [](auto span) { return std::accumulate(span.begin(), span.end(), 0ull); };
    EXPECT_EQ(sum(padded.pixels()), sum(img.pixels()));
  }
}

}  // namespace
}  // namespace lanehough
