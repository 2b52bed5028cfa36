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

#ifndef LANEHOUGH_IMAGE_HPP
#define LANEHOUGH_IMAGE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lanehough/errors.hpp"

namespace lanehough {

// Coordinates: x is the column, y is the row, (0, 0) is the top-left pixel.

struct GrayTag {
  static constexpr bool valid(std::uint8_t) { return true; }
};
struct EdgeTag {
  static constexpr bool valid(std::uint8_t) { return true; }
};
struct BinaryTag {
  static constexpr bool valid(std::uint8_t v) { return v == 0 || v == 255; }
};
struct GradientTag {
  static constexpr bool valid(std::int16_t) { return true; }
};

/// Row-major 2D pixel plane. The tag keeps pipeline stages apart at the type
/// level and supplies the per-value invariant checked on construction.
template <typename T, typename Tag>
class Plane {
 public:
  using value_type = T;
  using tag_type = Tag;

  Plane() = default;

  Plane(std::size_t width, std::size_t height, T fill = T{})
      : width_(width), height_(height), data_(checked_area(width, height), fill) {
    if (!Tag::valid(fill)) throw ParameterError("fill value violates plane invariant");
  }

  Plane(std::size_t width, std::size_t height, std::vector<T> data)
      : width_(width), height_(height), data_(std::move(data)) {
    if (data_.size() != checked_area(width, height)) {
      throw DimensionError("pixel buffer size " + std::to_string(data_.size()) +
                           " does not match " + std::to_string(width) + "x" +
                           std::to_string(height));
    }
    if (!std::all_of(data_.begin(), data_.end(), [](T v) { return Tag::valid(v); })) {
      throw ParameterError("pixel value violates plane invariant");
    }
  }

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  T operator()(std::size_t x, std::size_t y) const noexcept { return data_[y * width_ + x]; }
  T& operator()(std::size_t x, std::size_t y) noexcept { return data_[y * width_ + x]; }

  std::span<const T> pixels() const noexcept { return data_; }
  std::span<T> pixels() noexcept { return data_; }
  std::span<const T> row(std::size_t y) const noexcept {
    return std::span<const T>(data_).subspan(y * width_, width_);
  }

  friend bool operator==(const Plane&, const Plane&) = default;

 private:
  static std::size_t checked_area(std::size_t width, std::size_t height) {
    if (width == 0 || height == 0) throw DimensionError("image dimensions must be >= 1");
    return width * height;
  }

  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<T> data_;
};

using GrayImage = Plane<std::uint8_t, GrayTag>;
/// Clamped gradient magnitude, same size as the source image.
using EdgeImage = Plane<std::uint8_t, EdgeTag>;
/// Every value is exactly 0 or 255.
using BinaryImage = Plane<std::uint8_t, BinaryTag>;
/// Signed convolution response.
using GradientPlane = Plane<std::int16_t, GradientTag>;

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Interleaved 8-bit RGB image.
class RgbImage {
 public:
  RgbImage() = default;
  RgbImage(std::size_t width, std::size_t height)
      : width_(width), height_(height), data_(3 * width * height, 0) {
    if (width == 0 || height == 0) throw DimensionError("image dimensions must be >= 1");
  }

  /// Promotes a gray image to RGB with r = g = b.
  explicit RgbImage(const GrayImage& gray) : RgbImage(gray.width(), gray.height()) {
    auto src = gray.pixels();
    for (std::size_t i = 0; i < src.size(); ++i) {
      data_[3 * i] = data_[3 * i + 1] = data_[3 * i + 2] = src[i];
    }
  }

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }

  Rgb at(std::size_t x, std::size_t y) const noexcept {
    const std::size_t i = 3 * (y * width_ + x);
    return {data_[i], data_[i + 1], data_[i + 2]};
  }
  void set(std::size_t x, std::size_t y, Rgb c) noexcept {
    const std::size_t i = 3 * (y * width_ + x);
    data_[i] = c.r;
    data_[i + 1] = c.g;
    data_[i + 2] = c.b;
  }

  std::span<const std::uint8_t> bytes() const noexcept { return data_; }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<std::uint8_t> data_;
};

}  // namespace lanehough

#endif  // LANEHOUGH_IMAGE_HPP
