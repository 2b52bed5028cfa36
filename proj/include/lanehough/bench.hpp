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

#ifndef LANEHOUGH_BENCH_HPP
#define LANEHOUGH_BENCH_HPP

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "lanehough/edge.hpp"
#include "lanehough/errors.hpp"
#include "lanehough/hough.hpp"
#include "lanehough/image.hpp"
#include "lanehough/lanes.hpp"

namespace lanehough {

// ---------------------------------------------------------------------------
// Synthetic scenes
// ---------------------------------------------------------------------------

struct PlantedLine {
  std::size_t theta_bin = 0;
  std::int64_t rho = 0;
};

struct LaneScene {
  GrayImage image;
  std::array<PlantedLine, 2> lanes;
};

inline constexpr std::uint8_t scene_lane_level = 220;
inline constexpr std::uint8_t scene_salt_level = 255;
inline constexpr std::uint8_t scene_background_max = 10;
/// One salt pixel per this many pixels on average.
inline constexpr std::uint64_t scene_salt_period = 500;

/// Dark road with two 1 px bright lanes at 45 and 135 degrees plus salt noise.
///
/// The lanes pass through the bottom row at 15% and 85% of the width and
/// cross above it. Uses the raw mt19937_64 stream so the image is identical
/// on every standard library.
inline LaneScene make_lane_scene(std::size_t width, std::size_t height, std::uint64_t seed) {
  const std::size_t n_theta = default_theta_bins;
  const auto table = build_trig_table(n_theta, TrigMode::float64);
  std::mt19937_64 rng(seed);

  std::vector<std::uint8_t> px(width * height);
  for (auto& v : px) v = static_cast<std::uint8_t>(rng() % (scene_background_max + 1));

  LaneScene scene{GrayImage(width, height), {}};
  const double bottom = static_cast<double>(height - 1);
  const std::array<std::pair<std::size_t, double>, 2> anchors{
      {{n_theta / 4, 0.15 * static_cast<double>(width)},
       {3 * n_theta / 4, 0.85 * static_cast<double>(width)}}};
  for (std::size_t i = 0; i < 2; ++i) {
    const auto [k, x0] = anchors[i];
    const double r = x0 * table.cos[k] + bottom * table.sin[k];
    scene.lanes[i] = {k, static_cast<std::int64_t>(std::llround(r))};
    const PolarLine line{table.cos[k], table.sin[k], static_cast<double>(scene.lanes[i].rho)};
    for (const auto& p : raster_line(line, width, height)) {
      px[static_cast<std::size_t>(p.y) * width + static_cast<std::size_t>(p.x)] = scene_lane_level;
    }
  }
  for (auto& v : px) {
    if (rng() % scene_salt_period == 0) v = scene_salt_level;
  }
  scene.image = GrayImage(width, height, std::move(px));
  return scene;
}

// ---------------------------------------------------------------------------
// Latency
// ---------------------------------------------------------------------------

/// Wall-clock samples of the span from edge detection to a finished
/// accumulator. Image loading and peak extraction are not timed.
struct LatencyReport {
  VoteStrategy strategy;
  TrigMode trig_mode = TrigMode::float64;
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t repeats = 0;
  std::vector<double> samples_us;
  double median_us = 0.0;
  double min_us = 0.0;
  double max_us = 0.0;
  std::size_t white_pixels = 0;
  /// Output of the final timed run.
  HoughAccumulator accumulator;
};

inline double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

inline LatencyReport time_pipeline(const GrayImage& img, int threshold,
                                   const VoteStrategy& strategy, std::size_t repeats,
                                   const TrigTable& table) {
  if (repeats == 0) throw ParameterError("repeats must be >= 1");
  using clock = std::chrono::steady_clock;
  auto run = [&] { return accumulate(binarize(sobel_magnitude(img), threshold), table, strategy); };

  LatencyReport report;
  report.strategy = strategy;
  report.trig_mode = table.mode;
  report.width = img.width();
  report.height = img.height();
  report.repeats = repeats;
  report.accumulator = run();  // warm-up
  report.samples_us.reserve(repeats);
  for (std::size_t i = 0; i < repeats; ++i) {
    const auto t0 = clock::now();
    report.accumulator = run();
    const auto t1 = clock::now();
    report.samples_us.push_back(std::chrono::duration<double, std::micro>(t1 - t0).count());
  }
  report.median_us = median_of(report.samples_us);
  const auto [lo, hi] = std::minmax_element(report.samples_us.begin(), report.samples_us.end());
  report.min_us = *lo;
  report.max_us = *hi;
  report.white_pixels = static_cast<std::size_t>(report.accumulator.total_votes() / table.n_theta);
  return report;
}

inline LatencyReport time_pipeline(const GrayImage& img, int threshold,
                                   const VoteStrategy& strategy, std::size_t repeats) {
  return time_pipeline(img, threshold, strategy, repeats, build_trig_table());
}

// ---------------------------------------------------------------------------
// Memory
// ---------------------------------------------------------------------------

/// Closed-form buffer sizes of one pipeline run. These are host-memory sizes
/// of this implementation; they are not comparable to on-chip figures
/// measured on FPGA block RAM or GPU shared memory.
struct MemoryReport {
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t n_theta = 0;
  std::size_t counter_bytes = 0;
  /// n_theta * (2 * ceil(sqrt(w^2 + h^2)) + 1) * counter_bytes
  std::uint64_t accumulator_bytes = 0;
  /// gray + padded gray + two 16-bit gradient planes + edge + binary +
  /// accumulator. The white-pixel list is content dependent and excluded.
  std::uint64_t pipeline_bytes = 0;
};

namespace detail {

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    throw ParameterError("byte count overflows 64 bits");
  }
  return a * b;
}

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (b > std::numeric_limits<std::uint64_t>::max() - a) {
    throw ParameterError("byte count overflows 64 bits");
  }
  return a + b;
}

}  // namespace detail

inline MemoryReport memory_footprint(std::size_t width, std::size_t height, std::size_t n_theta,
                                     std::size_t counter_bytes) {
  if (width == 0 || height == 0 || n_theta == 0 || counter_bytes == 0) {
    throw ParameterError("memory_footprint arguments must all be >= 1");
  }
  if (width > (std::uint64_t{1} << 31) || height > (std::uint64_t{1} << 31)) {
    throw ParameterError("image dimensions too large");
  }
  using detail::checked_add;
  using detail::checked_mul;
  MemoryReport m{width, height, n_theta, counter_bytes, 0, 0};
  const std::uint64_t n_rho = 2 * std::uint64_t{rho_max_for(width, height)} + 1;
  m.accumulator_bytes = checked_mul(checked_mul(n_theta, n_rho), counter_bytes);
  const std::uint64_t area = checked_mul(width, height);
  const std::uint64_t padded = checked_mul(width + 2, height + 2);
  std::uint64_t total = area;                                  // gray
  total = checked_add(total, padded);                          // zero-padded gray
  total = checked_add(total, checked_mul(area, 2 * sizeof(std::int16_t)));  // gx, gy
  total = checked_add(total, checked_mul(area, 2));            // edge, binary
  m.pipeline_bytes = checked_add(total, m.accumulator_bytes);
  return m;
}

// ---------------------------------------------------------------------------
// Scaling study
// ---------------------------------------------------------------------------

struct ImageSize {
  std::size_t width = 0;
  std::size_t height = 0;
  friend bool operator==(const ImageSize&, const ImageSize&) = default;
};

struct ScalingConfig {
  std::vector<ImageSize> sizes;
  std::vector<VoteStrategy> strategies;
  std::size_t repeats = 5;
  std::uint64_t seed = 1;
  TrigMode trig_mode = TrigMode::float64;
  int threshold = default_threshold;
};

struct ScalingRow {
  std::size_t width = 0;
  std::size_t height = 0;
  VoteStrategy strategy;
  TrigMode trig_mode = TrigMode::float64;
  double median_us = 0.0;
  double min_us = 0.0;
  double max_us = 0.0;
  std::uint64_t accumulator_bytes = 0;
  std::uint64_t pipeline_bytes = 0;
  std::size_t white_pixels = 0;
};

inline constexpr const char* scaling_csv_header =
    "width,height,strategy,workers,trig_mode,median_us,min_us,max_us,accumulator_bytes,"
    "pipeline_bytes,white_pixels";

inline std::string to_csv(const ScalingRow& row) {
  char timing[96];
  std::snprintf(timing, sizeof timing, "%.3f,%.3f,%.3f", row.median_us, row.min_us, row.max_us);
  return std::to_string(row.width) + "," + std::to_string(row.height) + "," +
         std::string(to_string(row.strategy.kind)) + "," + std::to_string(row.strategy.workers) +
         "," + std::string(to_string(row.trig_mode)) + "," + timing + "," +
         std::to_string(row.accumulator_bytes) + "," + std::to_string(row.pipeline_bytes) + "," +
         std::to_string(row.white_pixels);
}

/// Times every (size, strategy) pair on a seeded synthetic scene and writes
/// one CSV row per pair. Only the three timing columns vary between reruns.
inline std::vector<ScalingRow> scaling_study(const ScalingConfig& config,
                                             const std::filesystem::path& csv_path) {
  if (config.sizes.empty() || config.strategies.empty()) {
    throw ParameterError("scaling study needs at least one size and one strategy");
  }
  std::ofstream out(csv_path, std::ios::trunc);
  if (!out) throw IoError("cannot open '" + csv_path.string() + "' for writing");
  out << scaling_csv_header << '\n';

  const auto table = build_trig_table(default_theta_bins, config.trig_mode);
  std::vector<ScalingRow> rows;
  for (const auto& size : config.sizes) {
    const auto scene = make_lane_scene(size.width, size.height, config.seed);
    const auto mem = memory_footprint(size.width, size.height, table.n_theta, sizeof(std::uint32_t));
    for (const auto& strategy : config.strategies) {
      const auto rep = time_pipeline(scene.image, config.threshold, strategy, config.repeats, table);
      ScalingRow row{size.width,      size.height,  strategy,    config.trig_mode,
                     rep.median_us,   rep.min_us,   rep.max_us,  mem.accumulator_bytes,
                     mem.pipeline_bytes, rep.white_pixels};
      out << to_csv(row) << '\n';
      rows.push_back(row);
    }
  }
  if (!out.flush()) throw IoError("write to '" + csv_path.string() + "' failed");
  return rows;
}

}  // namespace lanehough

#endif  // LANEHOUGH_BENCH_HPP
