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

#ifndef LANEHOUGH_PIPELINE_HPP
#define LANEHOUGH_PIPELINE_HPP

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "lanehough/bench.hpp"
#include "lanehough/edge.hpp"
#include "lanehough/errors.hpp"
#include "lanehough/hough.hpp"
#include "lanehough/imgio.hpp"
#include "lanehough/lanes.hpp"

namespace lanehough {

/// Process exit codes shared by every subcommand.
enum ExitCode : int { exit_ok = 0, exit_runtime_error = 1, exit_usage_error = 2 };

struct DetectConfig {
  std::filesystem::path input;
  /// Empty output paths default to "<input stem>_{overlay.png,peaks.csv,segments.csv}"
  /// in the working directory.
  std::filesystem::path overlay;
  std::filesystem::path peaks_csv;
  std::filesystem::path segments_csv;
  int threshold = default_threshold;
  BorderMode border = BorderMode::replicate;
  VoteStrategy strategy;
  TrigMode trig_mode = TrigMode::float64;
  PeakParams peaks;
  SegmentParams segments;
  Rgb color = default_lane_color;
  std::optional<std::filesystem::path> edge_dump;
  std::optional<std::filesystem::path> binary_dump;
  std::optional<std::filesystem::path> accumulator_dump;
};

struct DetectResult {
  EdgeImage edge;
  BinaryImage binary;
  HoughAccumulator accumulator;
  std::vector<Peak> peaks;
  std::vector<LineSegment> segments;
  RgbImage overlay;
};

/// Sobel, binarize, vote, pick peaks, extract segments, draw.
inline DetectResult detect_lanes(const GrayImage& gray, const DetectConfig& config) {
  DetectResult r;
  r.edge = sobel_magnitude(gray, config.border);
  r.binary = binarize(r.edge, config.threshold);
  const auto table = build_trig_table(default_theta_bins, config.trig_mode);
  r.accumulator = accumulate(r.binary, table, config.strategy);
  r.peaks = find_peaks(r.accumulator, config.peaks);
  for (const auto& peak : r.peaks) {
    auto segs = extract_segments(r.binary, peak, config.segments, table.n_theta);
    r.segments.insert(r.segments.end(), segs.begin(), segs.end());
  }
  r.overlay = render_overlay(gray, r.segments, config.color);
  return r;
}

namespace detail {

inline std::string format_degrees(double deg) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", deg);
  return buf;
}

inline std::ofstream open_text(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

inline std::filesystem::path default_output(const DetectConfig& c, const char* suffix) {
  return c.input.stem().string() + suffix;
}

}  // namespace detail

inline void write_peaks_csv(const std::filesystem::path& path, const std::vector<Peak>& peaks,
                            const HoughAccumulator& acc) {
  auto out = detail::open_text(path);
  out << "theta_deg,rho,votes\n";
  for (const auto& p : peaks) {
    out << detail::format_degrees(180.0 * static_cast<double>(p.theta_bin) /
                                  static_cast<double>(acc.n_theta()))
        << ',' << static_cast<std::int64_t>(p.rho_bin) - static_cast<std::int64_t>(acc.rho_offset())
        << ',' << p.votes << '\n';
  }
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

inline void write_segments_csv(const std::filesystem::path& path,
                               const std::vector<LineSegment>& segments,
                               const HoughAccumulator& acc) {
  auto out = detail::open_text(path);
  out << "x0,y0,x1,y1,theta_deg,rho\n";
  for (const auto& s : segments) {
    out << s.p0.x << ',' << s.p0.y << ',' << s.p1.x << ',' << s.p1.y << ','
        << detail::format_degrees(180.0 * static_cast<double>(s.source_peak.theta_bin) /
                                  static_cast<double>(acc.n_theta()))
        << ','
        << static_cast<std::int64_t>(s.source_peak.rho_bin) -
               static_cast<std::int64_t>(acc.rho_offset())
        << '\n';
  }
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

/// Full detection run with artifact output. Errors become a one-line
/// diagnostic on `err` and a nonzero exit code.
inline int run_detect(const DetectConfig& config, std::ostream& err) {
  try {
    const GrayImage gray = load_gray(config.input);
    const DetectResult r = detect_lanes(gray, config);

    if (config.edge_dump) save_image(r.edge, *config.edge_dump, format_for(*config.edge_dump));
    if (config.binary_dump) {
      save_image(r.binary, *config.binary_dump, format_for(*config.binary_dump));
    }
    if (config.accumulator_dump) dump_accumulator(r.accumulator, *config.accumulator_dump);

    const auto overlay =
        config.overlay.empty() ? detail::default_output(config, "_overlay.png") : config.overlay;
    const auto peaks =
        config.peaks_csv.empty() ? detail::default_output(config, "_peaks.csv") : config.peaks_csv;
    const auto segments = config.segments_csv.empty()
                              ? detail::default_output(config, "_segments.csv")
                              : config.segments_csv;
    save_image(r.overlay, overlay, ImageFormat::png);
    write_peaks_csv(peaks, r.peaks, r.accumulator);
    write_segments_csv(segments, r.segments, r.accumulator);
    return exit_ok;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage_error;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_runtime_error;
  }
}

/// Accumulator only, written as HACC1.
inline int run_dump_acc(const std::filesystem::path& input, const std::filesystem::path& output,
                        int threshold, const VoteStrategy& strategy, TrigMode trig_mode,
                        BorderMode border, std::ostream& err) {
  try {
    const auto binary = binarize(sobel_magnitude(load_gray(input), border), threshold);
    dump_accumulator(accumulate(binary, build_trig_table(default_theta_bins, trig_mode), strategy),
                     output);
    return exit_ok;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_runtime_error;
  }
}

inline std::optional<BorderMode> parse_border_mode(std::string_view s) noexcept {
  if (s == "replicate") return BorderMode::replicate;
  if (s == "zero") return BorderMode::zero;
  return std::nullopt;
}

inline const std::vector<ImageSize>& default_size_ladder() {
  static const std::vector<ImageSize> ladder{{128, 128}, {256, 256}, {512, 512}, {1024, 1024}};
  return ladder;
}

/// Parses "WxH[,WxH...]". Throws UsageError on anything else.
inline std::vector<ImageSize> parse_sizes(std::string_view text) {
  std::vector<ImageSize> out;
  auto parse_dim = [&](std::string_view s) {
    if (s.empty() || s.size() > 9 || s.find_first_not_of("0123456789") != std::string_view::npos) {
      throw UsageError("malformed size list '" + std::string(text) + "'");
    }
    const std::size_t v = std::stoul(std::string(s));
    if (v == 0) throw UsageError("image dimensions must be >= 1 in '" + std::string(text) + "'");
    return v;
  };
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    const auto item = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
    const std::size_t x = item.find('x');
    if (x == std::string_view::npos) {
      throw UsageError("malformed size '" + std::string(item) + "', expected WxH");
    }
    out.push_back({parse_dim(item.substr(0, x)), parse_dim(item.substr(x + 1))});
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

/// Parses "reference,atomic,...", giving each the shared worker/block settings.
inline std::vector<VoteStrategy> parse_strategies(std::string_view text, std::size_t workers,
                                                  std::size_t block) {
  std::vector<VoteStrategy> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    const auto item = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
    const auto kind = parse_strategy(item);
    if (!kind) throw UsageError("unknown strategy '" + std::string(item) + "'");
    out.push_back({*kind, workers, block});
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

inline int run_bench(const ScalingConfig& config, const std::filesystem::path& csv,
                     std::ostream& err) {
  try {
    scaling_study(config, csv);
    return exit_ok;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage_error;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_runtime_error;
  }
}

}  // namespace lanehough

#endif  // LANEHOUGH_PIPELINE_HPP
