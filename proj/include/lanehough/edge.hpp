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

#ifndef LANEHOUGH_EDGE_HPP
#define LANEHOUGH_EDGE_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <string>

#include "lanehough/errors.hpp"
#include "lanehough/image.hpp"
#include "lanehough/imgio.hpp"

namespace lanehough {

/// 3x3 integer kernel, indexed [row][column]. Coefficients are restricted to
/// {-2, -1, 0, 1, 2} so every product reduces to a shift and an add.
struct Kernel3x3 {
  std::array<std::array<int, 3>, 3> coefficients{};

  constexpr int operator()(std::size_t row, std::size_t col) const {
    return coefficients[row][col];
  }
  friend constexpr bool operator==(const Kernel3x3&, const Kernel3x3&) = default;
};

inline constexpr Kernel3x3 sobel_x{{{{-1, 0, 1}, {-2, 0, 2}, {-1, 0, 1}}}};
inline constexpr Kernel3x3 sobel_y{{{{1, 2, 1}, {0, 0, 0}, {-1, -2, -1}}}};

inline constexpr int default_threshold = 128;

/// How sobel_magnitude fills the one-pixel ring it needs around the image.
/// `replicate` repeats the outermost pixels, so flat regions produce no
/// response right up to the image edge. `zero` pads with black, which also
/// makes any bright image border an edge.
enum class BorderMode { replicate, zero };

namespace detail {

inline void check_shift_add_kernel(const Kernel3x3& k) {
  for (const auto& row : k.coefficients) {
    for (int c : row) {
      if (c < -2 || c > 2) {
        throw ParameterError("kernel coefficient " + std::to_string(c) +
                             " is outside {-2..2}");
      }
    }
  }
}

/// c * v for c in {-2..2}, without a multiplier: |c| == 2 is a left shift.
constexpr int shift_add_term(int c, int v) noexcept {
  if (c == 0) return 0;
  const int mag = (c == 2 || c == -2) ? (v << 1) : v;
  return c < 0 ? -mag : mag;
}

}  // namespace detail

/// Correlates `padded` with `kernel` at every position where the 3x3 window
/// fits, so the result is two pixels narrower and shorter than the input.
inline GradientPlane convolve3x3(const GrayImage& padded, const Kernel3x3& kernel) {
  if (padded.width() < 3 || padded.height() < 3) {
    throw DimensionError("convolve3x3 needs at least a 3x3 input, got " +
                         std::to_string(padded.width()) + "x" + std::to_string(padded.height()));
  }
  detail::check_shift_add_kernel(kernel);
  GradientPlane out(padded.width() - 2, padded.height() - 2);
  for (std::size_t y = 0; y < out.height(); ++y) {
    for (std::size_t x = 0; x < out.width(); ++x) {
      int acc = 0;
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
          acc += detail::shift_add_term(kernel(i, j), padded(x + j, y + i));
        }
      }
      out(x, y) = static_cast<std::int16_t>(acc);
    }
  }
  return out;
}

/// |Sx * img| + |Sy * img| saturated to 255, same size as the input.
inline EdgeImage sobel_magnitude(const GrayImage& img, BorderMode border = BorderMode::replicate) {
  const GrayImage padded = border == BorderMode::zero ? zero_pad(img, 1) : replicate_pad(img, 1);
  const GradientPlane gx = convolve3x3(padded, sobel_x);
  const GradientPlane gy = convolve3x3(padded, sobel_y);
  EdgeImage out(img.width(), img.height());
  auto dst = out.pixels();
  auto sx = gx.pixels();
  auto sy = gy.pixels();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    const int mag = std::abs(static_cast<int>(sx[i])) + std::abs(static_cast<int>(sy[i]));
    dst[i] = static_cast<std::uint8_t>(std::min(mag, 255));
  }
  return out;
}

/// 255 where edge >= threshold, else 0. Threshold 0 keeps everything,
/// 256 keeps nothing.
inline BinaryImage binarize(const EdgeImage& edge, int threshold) {
  if (threshold < 0 || threshold > 256) {
    throw ParameterError("threshold " + std::to_string(threshold) + " is outside [0, 256]");
  }
  BinaryImage out(edge.width(), edge.height());
  auto src = edge.pixels();
  auto dst = out.pixels();
  std::transform(src.begin(), src.end(), dst.begin(), [threshold](std::uint8_t v) {
    return static_cast<std::uint8_t>(v >= threshold ? 255 : 0);
  });
  return out;
}

}  // namespace lanehough

#endif  // LANEHOUGH_EDGE_HPP
