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

#ifndef LANEHOUGH_HOUGH_HPP
#define LANEHOUGH_HOUGH_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "lanehough/errors.hpp"
#include "lanehough/image.hpp"

namespace lanehough {

// ---------------------------------------------------------------------------
// Trig tables
// ---------------------------------------------------------------------------

enum class TrigMode { float64, q15 };

inline constexpr std::size_t default_theta_bins = 180;
inline constexpr double q15_scale = 32768.0;

/// cos/sin per angle bin; bin k stands for k * 180 / n_theta degrees over
/// the half-open range [0, 180).
///
/// In q15 mode `cos_raw`/`sin_raw` hold Q1.15 words and `cos`/`sin` hold the
/// exact value each word represents (raw / 32768). Entries above n_theta / 2
/// are copied from their mirror bin, so sin[k] == sin[n - k] and
/// cos[k] == -cos[n - k] hold bit-for-bit in both modes.
struct TrigTable {
  std::size_t n_theta = 0;
  TrigMode mode = TrigMode::float64;
  std::vector<double> cos;
  std::vector<double> sin;
  std::vector<std::int16_t> cos_raw;
  std::vector<std::int16_t> sin_raw;

  double theta_degrees(std::size_t k) const noexcept {
    return 180.0 * static_cast<double>(k) / static_cast<double>(n_theta);
  }
};

namespace detail {

inline std::int16_t to_q15(double v) {
  const long raw = std::lround(v * q15_scale);
  return static_cast<std::int16_t>(std::clamp(raw, -32768L, 32767L));
}

}  // namespace detail

inline TrigTable build_trig_table(std::size_t n_theta = default_theta_bins,
                                  TrigMode mode = TrigMode::float64) {
  if (n_theta < 2 || n_theta % 2 != 0) {
    throw ParameterError("n_theta must be even and >= 2, got " + std::to_string(n_theta));
  }
  const std::size_t half = n_theta / 2;
  TrigTable t;
  t.n_theta = n_theta;
  t.mode = mode;
  t.cos.resize(n_theta);
  t.sin.resize(n_theta);
  for (std::size_t k = 0; k <= half; ++k) {
    const double angle = std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_theta);
    t.cos[k] = std::cos(angle);
    t.sin[k] = std::sin(angle);
  }
  // Pin the axis-aligned bins; std::cos(pi / 2) is not exactly zero.
  t.cos[0] = 1.0;
  t.sin[0] = 0.0;
  t.cos[half] = 0.0;
  t.sin[half] = 1.0;

  if (mode == TrigMode::q15) {
    t.cos_raw.resize(n_theta);
    t.sin_raw.resize(n_theta);
    for (std::size_t k = 0; k <= half; ++k) {
      t.cos_raw[k] = detail::to_q15(t.cos[k]);
      t.sin_raw[k] = detail::to_q15(t.sin[k]);
    }
    for (std::size_t k = half + 1; k < n_theta; ++k) {
      t.cos_raw[k] = static_cast<std::int16_t>(-t.cos_raw[n_theta - k]);
      t.sin_raw[k] = t.sin_raw[n_theta - k];
    }
    for (std::size_t k = 0; k < n_theta; ++k) {
      t.cos[k] = t.cos_raw[k] / q15_scale;
      t.sin[k] = t.sin_raw[k] / q15_scale;
    }
  } else {
    for (std::size_t k = half + 1; k < n_theta; ++k) {
      t.cos[k] = -t.cos[n_theta - k];
      t.sin[k] = t.sin[n_theta - k];
    }
  }
  return t;
}

inline std::string_view to_string(TrigMode m) noexcept {
  return m == TrigMode::float64 ? "float" : "q15";
}

inline std::optional<TrigMode> parse_trig_mode(std::string_view s) noexcept {
  if (s == "float") return TrigMode::float64;
  if (s == "q15") return TrigMode::q15;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Accumulator
// ---------------------------------------------------------------------------

/// ceil(sqrt(width^2 + height^2)), computed in integers.
constexpr std::size_t rho_max_for(std::size_t width, std::size_t height) noexcept {
  const std::uint64_t sq = std::uint64_t{width} * width + std::uint64_t{height} * height;
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(sq)));
  while (r * r > sq) --r;
  while ((r + 1) * (r + 1) <= sq) ++r;
  return static_cast<std::size_t>(r * r == sq ? r : r + 1);
}

/// Vote counts indexed [theta_bin][rho_bin]; rho_bin = r + rho_offset covers
/// the signed range [-rho_max, rho_max].
class HoughAccumulator {
 public:
  HoughAccumulator() = default;
  HoughAccumulator(std::size_t n_theta, std::size_t width, std::size_t height)
      : n_theta_(n_theta),
        rho_offset_(rho_max_for(width, height)),
        n_rho_(2 * rho_offset_ + 1),
        width_(width),
        height_(height),
        counts_(n_theta_ * n_rho_, 0) {
    if (n_theta == 0 || width == 0 || height == 0) {
      throw ParameterError("accumulator dimensions must be >= 1");
    }
  }

  std::size_t n_theta() const noexcept { return n_theta_; }
  std::size_t n_rho() const noexcept { return n_rho_; }
  std::size_t rho_offset() const noexcept { return rho_offset_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }

  std::uint32_t at(std::size_t theta_bin, std::size_t rho_bin) const noexcept {
    return counts_[theta_bin * n_rho_ + rho_bin];
  }
  std::uint32_t& at(std::size_t theta_bin, std::size_t rho_bin) noexcept {
    return counts_[theta_bin * n_rho_ + rho_bin];
  }
  std::span<std::uint32_t> row(std::size_t theta_bin) noexcept {
    return std::span<std::uint32_t>(counts_).subspan(theta_bin * n_rho_, n_rho_);
  }
  std::span<const std::uint32_t> counts() const noexcept { return counts_; }
  std::span<std::uint32_t> counts() noexcept { return counts_; }

  std::uint64_t total_votes() const noexcept {
    return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
  }

  friend bool operator==(const HoughAccumulator&, const HoughAccumulator&) = default;

 private:
  std::size_t n_theta_ = 0;
  std::size_t rho_offset_ = 0;
  std::size_t n_rho_ = 0;
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<std::uint32_t> counts_;
};

// ---------------------------------------------------------------------------
// Rho arithmetic
// ---------------------------------------------------------------------------

/// Round half up.
inline std::int64_t quantize_rho(double r) noexcept {
  return static_cast<std::int64_t>(std::floor(r + 0.5));
}

/// Round half up for a Q.15 value held in an integer.
constexpr std::int64_t quantize_rho_q15(std::int64_t raw) noexcept {
  return (raw + (std::int64_t{1} << 14)) >> 15;
}

namespace detail {

// The two arithmetic back ends share one shape: products of a coordinate with
// a table entry, a sum or difference of two products, and a quantizer. Each
// product goes through x_term/y_term so the multiplication count is exact.

struct FloatArith {
  using value = double;
  const double* cos;
  const double* sin;
  std::uint64_t multiplies = 0;

  value x_term(std::int64_t x, std::size_t k) {
    ++multiplies;
    return static_cast<double>(x) * cos[k];
  }
  value y_term(std::int64_t y, std::size_t k) {
    ++multiplies;
    return static_cast<double>(y) * sin[k];
  }
  static std::int64_t quantize(value r) noexcept { return quantize_rho(r); }
};

struct Q15Arith {
  using value = std::int64_t;
  const std::int16_t* cos;
  const std::int16_t* sin;
  std::uint64_t multiplies = 0;

  value x_term(std::int64_t x, std::size_t k) {
    ++multiplies;
    return x * cos[k];
  }
  value y_term(std::int64_t y, std::size_t k) {
    ++multiplies;
    return y * sin[k];
  }
  static std::int64_t quantize(value r) noexcept { return quantize_rho_q15(r); }
};

template <typename Fn>
decltype(auto) with_arith(const TrigTable& table, Fn&& fn) {
  if (table.mode == TrigMode::q15) {
    return fn(Q15Arith{table.cos_raw.data(), table.sin_raw.data()});
  }
  return fn(FloatArith{table.cos.data(), table.sin.data()});
}

}  // namespace detail

/// Rho bin of the line through (x, y) whose normal has angle bin `theta_bin`.
inline std::size_t rho_of(std::size_t x, std::size_t y, std::size_t theta_bin,
                          const TrigTable& table, std::size_t rho_offset) {
  return detail::with_arith(table, [&](auto arith) {
    const auto r = arith.x_term(static_cast<std::int64_t>(x), theta_bin) +
                   arith.y_term(static_cast<std::int64_t>(y), theta_bin);
    return static_cast<std::size_t>(arith.quantize(r) + static_cast<std::int64_t>(rho_offset));
  });
}

// ---------------------------------------------------------------------------
// Work tiling
// ---------------------------------------------------------------------------

struct GridDims {
  std::size_t tiles_x = 0;
  std::size_t tiles_y = 0;
  std::size_t block = 16;

  std::size_t tile_count() const noexcept { return tiles_x * tiles_y; }
  std::size_t tile_of(std::size_t x, std::size_t y) const noexcept {
    return (y / block) * tiles_x + x / block;
  }
  friend bool operator==(const GridDims&, const GridDims&) = default;
};

inline constexpr std::size_t default_block = 16;

/// Ceil-division grid of block x block tiles covering width x height.
inline GridDims tile_grid(std::size_t width, std::size_t height,
                          std::size_t block = default_block) {
  if (block == 0) throw ParameterError("tile block size must be >= 1");
  return {(width + block - 1) / block, (height + block - 1) / block, block};
}

// ---------------------------------------------------------------------------
// Voting
// ---------------------------------------------------------------------------

enum class StrategyKind { reference, symmetric_half_angle, angle_partitioned, pixel_parallel_atomic };

struct VoteStrategy {
  StrategyKind kind = StrategyKind::reference;
  std::size_t workers = 1;
  /// Tile edge used by the atomic strategy to hand pixels to workers.
  std::size_t block = default_block;
};

inline std::string_view to_string(StrategyKind k) noexcept {
  switch (k) {
    case StrategyKind::reference: return "reference";
    case StrategyKind::symmetric_half_angle: return "symmetric";
    case StrategyKind::angle_partitioned: return "angle-partitioned";
    case StrategyKind::pixel_parallel_atomic: return "atomic";
  }
  return "unknown";
}

inline std::optional<StrategyKind> parse_strategy(std::string_view s) noexcept {
  for (auto k : {StrategyKind::reference, StrategyKind::symmetric_half_angle,
                 StrategyKind::angle_partitioned, StrategyKind::pixel_parallel_atomic}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

/// Instrumentation filled in by accumulate().
struct VoteStats {
  std::uint64_t multiplies = 0;
  std::size_t white_pixels = 0;
  std::size_t workers_used = 0;
};

struct PixelCoord {
  std::int32_t x = 0;
  std::int32_t y = 0;
  friend bool operator==(const PixelCoord&, const PixelCoord&) = default;
};

/// Coordinates of all 255 pixels in raster order.
inline std::vector<PixelCoord> extract_white_pixels(const BinaryImage& img) {
  std::vector<PixelCoord> out;
  for (std::size_t y = 0; y < img.height(); ++y) {
    auto row = img.row(y);
    for (std::size_t x = 0; x < row.size(); ++x) {
      if (row[x] == 255) out.push_back({static_cast<std::int32_t>(x), static_cast<std::int32_t>(y)});
    }
  }
  return out;
}

namespace detail {

template <typename Arith>
void vote_reference(HoughAccumulator& acc, std::span<const PixelCoord> pixels, Arith& arith) {
  const auto offset = static_cast<std::int64_t>(acc.rho_offset());
  for (const auto& p : pixels) {
    for (std::size_t k = 0; k < acc.n_theta(); ++k) {
      const auto r = arith.x_term(p.x, k) + arith.y_term(p.y, k);
      ++acc.at(k, static_cast<std::size_t>(arith.quantize(r) + offset));
    }
  }
}

// Bin n - k reuses the products of bin k: x*cos(n-k) + y*sin(n-k) = y*sin(k) - x*cos(k).
template <typename Arith>
void vote_symmetric(HoughAccumulator& acc, std::span<const PixelCoord> pixels, Arith& arith) {
  const auto offset = static_cast<std::int64_t>(acc.rho_offset());
  const std::size_t n = acc.n_theta();
  const std::size_t half = n / 2;
  auto bin = [&](auto r) { return static_cast<std::size_t>(arith.quantize(r) + offset); };
  for (const auto& p : pixels) {
    // k = 0 has no partner inside [0, 180); k = n/2 is its own partner.
    ++acc.at(0, bin(arith.x_term(p.x, 0) + arith.y_term(p.y, 0)));
    for (std::size_t k = 1; k < half; ++k) {
      const auto p1 = arith.x_term(p.x, k);
      const auto p2 = arith.y_term(p.y, k);
      ++acc.at(k, bin(p1 + p2));
      ++acc.at(n - k, bin(p2 - p1));
    }
    ++acc.at(half, bin(arith.x_term(p.x, half) + arith.y_term(p.y, half)));
  }
}

// Each worker owns the accumulator rows of one contiguous theta slice.
template <typename Arith>
std::size_t vote_angle_partitioned(HoughAccumulator& acc, std::span<const PixelCoord> pixels,
                                   Arith& arith, std::size_t workers) {
  const std::size_t n = acc.n_theta();
  const std::size_t used = std::min(workers, n);
  const auto offset = static_cast<std::int64_t>(acc.rho_offset());
  std::vector<Arith> local(used, arith);
  {
    std::vector<std::jthread> threads;
    threads.reserve(used);
    for (std::size_t w = 0; w < used; ++w) {
      threads.emplace_back([&, w] {
        const std::size_t k_begin = n * w / used;
        const std::size_t k_end = n * (w + 1) / used;
        Arith& a = local[w];
        for (std::size_t k = k_begin; k < k_end; ++k) {
          auto row = acc.row(k);
          for (const auto& p : pixels) {
            const auto r = a.x_term(p.x, k) + a.y_term(p.y, k);
            ++row[static_cast<std::size_t>(a.quantize(r) + offset)];
          }
        }
      });
    }
  }
  for (const auto& a : local) arith.multiplies += a.multiplies;
  return used;
}

// Tiles go to workers round-robin; every worker increments the shared
// accumulator through atomic_ref.
template <typename Arith>
std::size_t vote_pixel_atomic(HoughAccumulator& acc, std::span<const PixelCoord> pixels,
                              Arith& arith, std::size_t workers, std::size_t block) {
  const GridDims grid = tile_grid(acc.width(), acc.height(), block);
  const std::size_t tiles = grid.tile_count();

  // Bucket pixel indices by tile (counting sort keeps raster order inside a tile).
  std::vector<std::size_t> start(tiles + 1, 0);
  for (const auto& p : pixels) ++start[grid.tile_of(p.x, p.y) + 1];
  std::partial_sum(start.begin(), start.end(), start.begin());
  std::vector<std::size_t> order(pixels.size());
  {
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    for (std::size_t i = 0; i < pixels.size(); ++i) {
      order[fill[grid.tile_of(pixels[i].x, pixels[i].y)]++] = i;
    }
  }

  const std::size_t used = std::max<std::size_t>(1, std::min(workers, tiles));
  const std::size_t n = acc.n_theta();
  const std::size_t n_rho = acc.n_rho();
  const auto offset = static_cast<std::int64_t>(acc.rho_offset());
  auto counts = acc.counts();
  std::vector<Arith> local(used, arith);
  {
    std::vector<std::jthread> threads;
    threads.reserve(used);
    for (std::size_t w = 0; w < used; ++w) {
      threads.emplace_back([&, w] {
        Arith& a = local[w];
        for (std::size_t t = w; t < tiles; t += used) {
          for (std::size_t i = start[t]; i < start[t + 1]; ++i) {
            const auto& p = pixels[order[i]];
            for (std::size_t k = 0; k < n; ++k) {
              const auto r = a.x_term(p.x, k) + a.y_term(p.y, k);
              const auto idx = k * n_rho + static_cast<std::size_t>(a.quantize(r) + offset);
              std::atomic_ref<std::uint32_t>(counts[idx]).fetch_add(1, std::memory_order_relaxed);
            }
          }
        }
      });
    }
  }
  for (const auto& a : local) arith.multiplies += a.multiplies;
  return used;
}

}  // namespace detail

/// Adds the votes of `pixels` to `acc`. The table must have as many bins as
/// the accumulator has theta rows.
inline void accumulate_into(HoughAccumulator& acc, std::span<const PixelCoord> pixels,
                            const TrigTable& table, const VoteStrategy& strategy,
                            VoteStats* stats = nullptr) {
  if (table.n_theta != acc.n_theta()) {
    throw ParameterError("trig table has " + std::to_string(table.n_theta) +
                         " bins but accumulator has " + std::to_string(acc.n_theta()));
  }
  if (strategy.workers == 0) throw ParameterError("worker count must be >= 1");
  if (strategy.block == 0) throw ParameterError("tile block size must be >= 1");
  for (const auto& p : pixels) {
    if (p.x < 0 || p.y < 0 || static_cast<std::size_t>(p.x) >= acc.width() ||
        static_cast<std::size_t>(p.y) >= acc.height()) {
      throw ParameterError("pixel (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                           ") lies outside the accumulator's source image");
    }
  }

  const auto [multiplies, used] = detail::with_arith(table, [&](auto arith) {
    std::size_t used = 1;
    switch (strategy.kind) {
      case StrategyKind::reference:
        detail::vote_reference(acc, pixels, arith);
        break;
      case StrategyKind::symmetric_half_angle:
        detail::vote_symmetric(acc, pixels, arith);
        break;
      case StrategyKind::angle_partitioned:
        used = detail::vote_angle_partitioned(acc, pixels, arith, strategy.workers);
        break;
      case StrategyKind::pixel_parallel_atomic:
        used = detail::vote_pixel_atomic(acc, pixels, arith, strategy.workers, strategy.block);
        break;
    }
    return std::pair{arith.multiplies, used};
  });
  if (stats) {
    stats->multiplies += multiplies;
    stats->white_pixels += pixels.size();
    stats->workers_used = used;
  }
}

/// Hough transform of a binary image: every 255 pixel votes once per angle bin.
inline HoughAccumulator accumulate(const BinaryImage& img, const TrigTable& table,
                                   const VoteStrategy& strategy = {},
                                   VoteStats* stats = nullptr) {
  HoughAccumulator acc(table.n_theta, img.width(), img.height());
  const auto pixels = extract_white_pixels(img);
  accumulate_into(acc, pixels, table, strategy, stats);
  return acc;
}

// ---------------------------------------------------------------------------
// HACC1 dump format
// ---------------------------------------------------------------------------
//
//   "HACC1 <n_theta> <n_rho> <rho_offset> <width> <height>\n"
//   n_theta * n_rho little-endian uint32 counts, row-major by theta.

inline void dump_accumulator(const HoughAccumulator& acc, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << "HACC1 " << acc.n_theta() << ' ' << acc.n_rho() << ' ' << acc.rho_offset() << ' '
      << acc.width() << ' ' << acc.height() << '\n';
  std::vector<char> bytes(acc.counts().size() * 4);
  std::size_t i = 0;
  for (std::uint32_t c : acc.counts()) {
    bytes[i++] = static_cast<char>(c & 0xff);
    bytes[i++] = static_cast<char>((c >> 8) & 0xff);
    bytes[i++] = static_cast<char>((c >> 16) & 0xff);
    bytes[i++] = static_cast<char>((c >> 24) & 0xff);
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

inline HoughAccumulator load_accumulator(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::string header;
  if (!std::getline(in, header)) throw FormatError("'" + path.string() + "': empty file");
  std::istringstream fields(header);
  std::string magic;
  std::size_t n_theta = 0, n_rho = 0, offset = 0, width = 0, height = 0;
  if (!(fields >> magic >> n_theta >> n_rho >> offset >> width >> height) || magic != "HACC1") {
    throw FormatError("'" + path.string() + "': bad HACC1 header");
  }
  if (n_theta == 0 || width == 0 || height == 0) {
    throw FormatError("'" + path.string() + "': zero dimension in header");
  }
  HoughAccumulator acc(n_theta, width, height);
  if (acc.n_rho() != n_rho || acc.rho_offset() != offset) {
    throw FormatError("'" + path.string() + "': rho geometry does not match image size");
  }
  std::vector<unsigned char> bytes(acc.counts().size() * 4);
  in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (static_cast<std::size_t>(in.gcount()) != bytes.size()) {
    throw FormatError("'" + path.string() + "': truncated count payload");
  }
  auto counts = acc.counts();
  for (std::size_t i = 0; i < counts.size(); ++i) {
    counts[i] = std::uint32_t{bytes[4 * i]} | (std::uint32_t{bytes[4 * i + 1]} << 8) |
                (std::uint32_t{bytes[4 * i + 2]} << 16) | (std::uint32_t{bytes[4 * i + 3]} << 24);
  }
  return acc;
}

}  // namespace lanehough

#endif  // LANEHOUGH_HOUGH_HPP
