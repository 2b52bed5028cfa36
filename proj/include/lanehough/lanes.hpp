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

#ifndef LANEHOUGH_LANES_HPP
#define LANEHOUGH_LANES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "lanehough/errors.hpp"
#include "lanehough/hough.hpp"
#include "lanehough/image.hpp"

namespace lanehough {

struct Peak {
  std::size_t theta_bin = 0;
  std::size_t rho_bin = 0;
  std::uint32_t votes = 0;
  friend bool operator==(const Peak&, const Peak&) = default;
};

/// Peak picking knobs. Unset neighborhoods default to the smallest odd
/// integer >= dimension / 50 of the accumulator they are applied to.
struct PeakParams {
  std::size_t max_peaks = 2;
  double threshold_ratio = 0.5;
  std::optional<std::size_t> nhood_theta;
  std::optional<std::size_t> nhood_rho;
};

/// Smallest odd integer >= extent / 50.
constexpr std::size_t default_nhood(std::size_t extent) noexcept {
  const std::size_t v = std::max<std::size_t>(1, (extent + 49) / 50);
  return v % 2 == 0 ? v + 1 : v;
}

namespace detail {

inline std::size_t checked_nhood(std::optional<std::size_t> v, std::size_t extent,
                                 const char* name) {
  const std::size_t n = v.value_or(default_nhood(extent));
  if (n == 0 || n % 2 == 0) {
    throw ParameterError(std::string(name) + " must be odd and >= 1, got " + std::to_string(n));
  }
  return n;
}

}  // namespace detail

/// Greedy non-maximum suppression over the accumulator.
///
/// Repeatedly takes the largest unsuppressed cell (ties go to the lower theta
/// bin, then the lower rho bin), stops when it falls below
/// threshold_ratio * global max, and blanks the nhood_theta x nhood_rho window
/// around each pick. Theta does not wrap at the edges.
inline std::vector<Peak> find_peaks(const HoughAccumulator& acc, const PeakParams& params = {}) {
  if (!(params.threshold_ratio > 0.0 && params.threshold_ratio <= 1.0)) {
    throw ParameterError("threshold_ratio must be in (0, 1]");
  }
  const std::size_t nt = detail::checked_nhood(params.nhood_theta, acc.n_theta(), "nhood_theta");
  const std::size_t nr = detail::checked_nhood(params.nhood_rho, acc.n_rho(), "nhood_rho");

  std::vector<Peak> peaks;
  const auto counts = acc.counts();
  if (counts.empty()) return peaks;
  const std::uint32_t global_max = *std::max_element(counts.begin(), counts.end());
  if (global_max == 0) return peaks;
  const double floor_votes = params.threshold_ratio * global_max;

  std::vector<bool> suppressed(counts.size(), false);
  const std::size_t n_rho = acc.n_rho();
  while (peaks.size() < params.max_peaks) {
    std::uint32_t best = 0;
    std::size_t best_idx = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
      if (!suppressed[i] && counts[i] > best) {
        best = counts[i];
        best_idx = i;
      }
    }
    if (best == 0 || best < floor_votes) break;
    const std::size_t k = best_idx / n_rho;
    const std::size_t r = best_idx % n_rho;
    peaks.push_back({k, r, best});

    const std::size_t k0 = k >= nt / 2 ? k - nt / 2 : 0;
    const std::size_t k1 = std::min(acc.n_theta() - 1, k + nt / 2);
    const std::size_t r0 = r >= nr / 2 ? r - nr / 2 : 0;
    const std::size_t r1 = std::min(n_rho - 1, r + nr / 2);
    for (std::size_t kk = k0; kk <= k1; ++kk) {
      for (std::size_t rr = r0; rr <= r1; ++rr) suppressed[kk * n_rho + rr] = true;
    }
  }
  return peaks;
}

struct LineSegment {
  PixelCoord p0;
  PixelCoord p1;
  Peak source_peak;

  double length() const noexcept {
    return std::hypot(static_cast<double>(p1.x - p0.x), static_cast<double>(p1.y - p0.y));
  }
  friend bool operator==(const LineSegment&, const LineSegment&) = default;
};

/// Polar line r = x cos(theta) + y sin(theta) in pixel units.
struct PolarLine {
  double cos = 1.0;
  double sin = 0.0;
  double rho = 0.0;

  /// Perpendicular distance of a pixel center from the line.
  double distance(PixelCoord p) const noexcept {
    return std::abs(p.x * cos + p.y * sin - rho);
  }
};

inline PolarLine polar_line(const Peak& peak, std::size_t width, std::size_t height,
                            std::size_t n_theta = default_theta_bins) {
  if (peak.theta_bin >= n_theta) throw ParameterError("peak theta bin out of range");
  const auto table = build_trig_table(n_theta, TrigMode::float64);
  const auto offset = static_cast<double>(rho_max_for(width, height));
  return {table.cos[peak.theta_bin], table.sin[peak.theta_bin],
          static_cast<double>(peak.rho_bin) - offset};
}

/// Pixels of the line inside a width x height image, stepping one pixel at a
/// time along the dominant axis and rounding the other coordinate half up.
/// Every pixel lies within 0.5 px of the line.
inline std::vector<PixelCoord> raster_line(const PolarLine& line, std::size_t width,
                                           std::size_t height) {
  std::vector<PixelCoord> out;
  if (std::abs(line.sin) >= std::abs(line.cos)) {
    for (std::size_t x = 0; x < width; ++x) {
      const double y = (line.rho - static_cast<double>(x) * line.cos) / line.sin;
      const auto yi = static_cast<std::int64_t>(std::floor(y + 0.5));
      if (yi >= 0 && static_cast<std::size_t>(yi) < height) {
        out.push_back({static_cast<std::int32_t>(x), static_cast<std::int32_t>(yi)});
      }
    }
  } else {
    for (std::size_t y = 0; y < height; ++y) {
      const double x = (line.rho - static_cast<double>(y) * line.sin) / line.cos;
      const auto xi = static_cast<std::int64_t>(std::floor(x + 0.5));
      if (xi >= 0 && static_cast<std::size_t>(xi) < width) {
        out.push_back({static_cast<std::int32_t>(xi), static_cast<std::int32_t>(y)});
      }
    }
  }
  return out;
}

/// The peak's line clipped to the image, or nullopt when it misses entirely.
inline std::optional<LineSegment> peak_to_line(const Peak& peak, std::size_t width,
                                               std::size_t height,
                                               std::size_t n_theta = default_theta_bins) {
  const auto pixels = raster_line(polar_line(peak, width, height, n_theta), width, height);
  if (pixels.empty()) return std::nullopt;
  return LineSegment{pixels.front(), pixels.back(), peak};
}

struct SegmentParams {
  /// Runs whose facing endpoints are at most this far apart are merged.
  double fill_gap = 20.0;
  /// Merged runs shorter than this are dropped.
  double min_len = 40.0;
};

/// White pixels that vote for the peak's bin, i.e. lie within 0.5 px of its
/// line, ordered along the line. Near 45 degrees two pixels of the same
/// column (or row) can qualify; both are kept.
inline std::vector<PixelCoord> line_support(const BinaryImage& img, const Peak& peak,
                                            std::size_t n_theta = default_theta_bins) {
  const auto table = build_trig_table(n_theta, TrigMode::float64);
  const std::size_t offset = rho_max_for(img.width(), img.height());
  const auto line = polar_line(peak, img.width(), img.height(), n_theta);
  std::vector<PixelCoord> out;
  auto consider = [&](std::int64_t x, std::int64_t y) {
    if (x < 0 || y < 0 || static_cast<std::size_t>(x) >= img.width() ||
        static_cast<std::size_t>(y) >= img.height()) {
      return;
    }
    const auto ux = static_cast<std::size_t>(x);
    const auto uy = static_cast<std::size_t>(y);
    if (img(ux, uy) == 255 && rho_of(ux, uy, peak.theta_bin, table, offset) == peak.rho_bin) {
      out.push_back({static_cast<std::int32_t>(x), static_cast<std::int32_t>(y)});
    }
  };
  if (std::abs(line.sin) >= std::abs(line.cos)) {
    for (std::size_t x = 0; x < img.width(); ++x) {
      const double y = (line.rho - static_cast<double>(x) * line.cos) / line.sin;
      const auto yi = static_cast<std::int64_t>(std::floor(y + 0.5));
      for (std::int64_t d = -1; d <= 1; ++d) consider(static_cast<std::int64_t>(x), yi + d);
    }
  } else {
    for (std::size_t y = 0; y < img.height(); ++y) {
      const double x = (line.rho - static_cast<double>(y) * line.sin) / line.cos;
      const auto xi = static_cast<std::int64_t>(std::floor(x + 0.5));
      for (std::int64_t d = -1; d <= 1; ++d) consider(xi + d, static_cast<std::int64_t>(y));
    }
  }
  return out;
}

/// Stretches of white pixels along the peak's line, in walk order.
inline std::vector<LineSegment> extract_segments(const BinaryImage& img, const Peak& peak,
                                                 const SegmentParams& params = {},
                                                 std::size_t n_theta = default_theta_bins) {
  const auto white = line_support(img, peak, n_theta);

  std::vector<LineSegment> out;
  auto flush = [&](PixelCoord a, PixelCoord b) {
    LineSegment s{a, b, peak};
    if (s.length() >= params.min_len) out.push_back(s);
  };
  if (white.empty()) return out;
  PixelCoord run_start = white.front();
  PixelCoord prev = white.front();
  for (std::size_t i = 1; i < white.size(); ++i) {
    const auto& p = white[i];
    const double gap = std::hypot(static_cast<double>(p.x - prev.x),
                                  static_cast<double>(p.y - prev.y));
    if (gap > params.fill_gap) {
      flush(run_start, prev);
      run_start = p;
    }
    prev = p;
  }
  flush(run_start, prev);
  return out;
}

/// Integer line rasterization between two pixels, inclusive of both ends.
template <typename Visit>
void bresenham(PixelCoord a, PixelCoord b, Visit&& visit) {
  const int dx = std::abs(b.x - a.x);
  const int dy = -std::abs(b.y - a.y);
  const int sx = a.x < b.x ? 1 : -1;
  const int sy = a.y < b.y ? 1 : -1;
  int err = dx + dy;
  int x = a.x;
  int y = a.y;
  for (;;) {
    visit(x, y);
    if (x == b.x && y == b.y) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y += sy;
    }
  }
}

inline constexpr Rgb default_lane_color{255, 0, 0};

/// Gray promoted to RGB with each segment painted 1 px wide in `color`.
inline RgbImage render_overlay(const GrayImage& gray, const std::vector<LineSegment>& segments,
                               Rgb color = default_lane_color) {
  RgbImage out(gray);
  for (const auto& s : segments) {
    bresenham(s.p0, s.p1, [&](int x, int y) {
      if (x >= 0 && y >= 0 && static_cast<std::size_t>(x) < out.width() &&
          static_cast<std::size_t>(y) < out.height()) {
        out.set(static_cast<std::size_t>(x), static_cast<std::size_t>(y), color);
      }
    });
  }
  return out;
}

}  // namespace lanehough

#endif  // LANEHOUGH_LANES_HPP
