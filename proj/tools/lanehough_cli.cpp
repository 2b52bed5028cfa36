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

// lanehough: lane detection and Hough voting benchmarks from the command line.
//
//   lanehough detect road.png [--strategy atomic --workers 4 ...]
//   lanehough dump-acc road.png acc.hacc
//   lanehough bench --sizes 128x128,512x512 --strategies reference,atomic --csv out.csv

#include <algorithm>
#include <iostream>
#include <vector>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "lanehough/lanehough.hpp"

namespace {

using namespace lanehough;

const std::vector<std::string> strategy_names{"reference", "symmetric", "angle-partitioned",
                                              "atomic"};
const std::vector<std::string> trig_names{"float", "q15"};
const std::vector<std::string> border_names{"replicate", "zero"};

void add_voting_options(CLI::App* cmd, int& threshold, std::string& border, std::string& kind,
                        std::size_t& workers, std::string& trig, std::size_t& block) {
  cmd->add_option("--border", border, "Sobel border fill")
      ->check(CLI::IsMember(border_names))
      ->capture_default_str();
  cmd->add_option("--threshold", threshold, "Binarization threshold on gradient magnitude")
      ->check(CLI::Range(0, 256))
      ->capture_default_str();
  cmd->add_option("--strategy", kind, "Voting strategy")
      ->check(CLI::IsMember(strategy_names))
      ->capture_default_str();
  cmd->add_option("--workers", workers, "Worker threads for parallel strategies")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1024}))
      ->capture_default_str();
  cmd->add_option("--trig", trig, "Trig table arithmetic")
      ->check(CLI::IsMember(trig_names))
      ->capture_default_str();
  cmd->add_option("--block", block, "Tile edge for the atomic strategy")
      ->check(CLI::Range(std::size_t{1}, std::size_t{4096}))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sobel + Hough lane detection with parallel voting strategies"};
  app.require_subcommand(1);

  // detect
  DetectConfig detect;
  std::string detect_kind = "reference";
  std::string detect_trig = "float";
  std::string detect_border = "replicate";
  std::size_t detect_workers = 1;
  std::size_t detect_block = default_block;
  std::size_t nhood_theta = 0;
  std::size_t nhood_rho = 0;
  std::string edge_dump, binary_dump, acc_dump;
  auto* det = app.add_subcommand("detect", "Detect lane lines and draw them over the input");
  det->add_option("input", detect.input, "Input image (P5 PGM or PNG)")->required();
  det->add_option("-o,--overlay", detect.overlay, "Overlay PNG (default <stem>_overlay.png)");
  det->add_option("--peaks-csv", detect.peaks_csv, "Peaks CSV (default <stem>_peaks.csv)");
  det->add_option("--segments-csv", detect.segments_csv,
                  "Segments CSV (default <stem>_segments.csv)");
  add_voting_options(det, detect.threshold, detect_border, detect_kind, detect_workers, detect_trig,
                     detect_block);
  det->add_option("--max-peaks", detect.peaks.max_peaks, "Number of lines to report")
      ->capture_default_str();
  det->add_option("--peak-ratio", detect.peaks.threshold_ratio,
                  "Minimum peak height as a fraction of the global maximum")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  det->add_option("--nhood-theta", nhood_theta, "Suppression window in theta bins (odd)");
  det->add_option("--nhood-rho", nhood_rho, "Suppression window in rho bins (odd)");
  det->add_option("--fill-gap", detect.segments.fill_gap, "Merge runs closer than this (px)")
      ->capture_default_str();
  det->add_option("--min-len", detect.segments.min_len, "Drop segments shorter than this (px)")
      ->capture_default_str();
  det->add_option("--dump-edge", edge_dump, "Write the gradient magnitude image");
  det->add_option("--dump-binary", binary_dump, "Write the binarized image");
  det->add_option("--dump-acc", acc_dump, "Write the accumulator as HACC1");

  // dump-acc
  std::filesystem::path dump_input, dump_output;
  int dump_threshold = default_threshold;
  std::string dump_kind = "reference";
  std::size_t dump_workers = 1;
  std::size_t dump_block = default_block;
  std::string dump_trig = "float";
  std::string dump_border = "replicate";
  auto* dump = app.add_subcommand("dump-acc", "Run through voting and write the HACC1 accumulator");
  dump->add_option("input", dump_input, "Input image (P5 PGM or PNG)")->required();
  dump->add_option("output", dump_output, "HACC1 output path")->required();
  add_voting_options(dump, dump_threshold, dump_border, dump_kind, dump_workers, dump_trig, dump_block);

  // bench
  std::string sizes_text;
  std::string strategies_text = "reference,symmetric,angle-partitioned,atomic";
  std::size_t bench_workers = std::max(1u, std::thread::hardware_concurrency());
  std::size_t bench_block = default_block;
  std::filesystem::path bench_csv = "bench.csv";
  std::string bench_trig = "float";
  ScalingConfig bench;
  auto* ben = app.add_subcommand("bench", "Latency and memory scaling study on synthetic scenes");
  ben->add_option("--sizes", sizes_text, "Image sizes WxH[,WxH...] (default 128x128..1024x1024)");
  ben->add_option("--strategies", strategies_text, "Comma-separated voting strategies")
      ->capture_default_str();
  ben->add_option("--workers", bench_workers, "Worker threads for parallel strategies")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1024}))
      ->capture_default_str();
  ben->add_option("--block", bench_block, "Tile edge for the atomic strategy")
      ->check(CLI::Range(std::size_t{1}, std::size_t{4096}))
      ->capture_default_str();
  ben->add_option("--repeats", bench.repeats, "Timed runs per configuration")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1000000}))
      ->capture_default_str();
  ben->add_option("--seed", bench.seed, "Synthetic scene seed")->capture_default_str();
  ben->add_option("--threshold", bench.threshold, "Binarization threshold")
      ->check(CLI::Range(0, 256))
      ->capture_default_str();
  ben->add_option("--trig", bench_trig, "Trig table arithmetic")
      ->check(CLI::IsMember(trig_names))
      ->capture_default_str();
  ben->add_option("--csv", bench_csv, "CSV output path")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return exit_usage_error;
  }

  if (*det) {
    detect.strategy = {*parse_strategy(detect_kind), detect_workers, detect_block};
    detect.trig_mode = *parse_trig_mode(detect_trig);
    detect.border = *parse_border_mode(detect_border);
    if (nhood_theta != 0) detect.peaks.nhood_theta = nhood_theta;
    if (nhood_rho != 0) detect.peaks.nhood_rho = nhood_rho;
    if (!edge_dump.empty()) detect.edge_dump = edge_dump;
    if (!binary_dump.empty()) detect.binary_dump = binary_dump;
    if (!acc_dump.empty()) detect.accumulator_dump = acc_dump;
    if (detect.peaks.threshold_ratio <= 0.0 ||
        (detect.peaks.nhood_theta && *detect.peaks.nhood_theta % 2 == 0) ||
        (detect.peaks.nhood_rho && *detect.peaks.nhood_rho % 2 == 0)) {
      std::cerr << "error: --peak-ratio must be > 0 and --nhood-* must be odd\n\n" << det->help();
      return exit_usage_error;
    }
    return run_detect(detect, std::cerr);
  }
  if (*dump) {
    return run_dump_acc(dump_input, dump_output, dump_threshold,
                        {*parse_strategy(dump_kind), dump_workers, dump_block},
                        *parse_trig_mode(dump_trig), *parse_border_mode(dump_border), std::cerr);
  }
  try {
    bench.trig_mode = *parse_trig_mode(bench_trig);
    bench.sizes = sizes_text.empty() ? default_size_ladder() : parse_sizes(sizes_text);
    bench.strategies = parse_strategies(strategies_text, bench_workers, bench_block);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << ben->help();
    return exit_usage_error;
  }
  return run_bench(bench, bench_csv, std::cerr);
}
