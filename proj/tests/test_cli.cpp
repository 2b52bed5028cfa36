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

// Drives the built `lanehough` binary and the pipeline entry points behind it.

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "lanehough/pipeline.hpp"
#include "test_support.hpp"

#ifndef LANEHOUGH_CLI
#error "LANEHOUGH_CLI must name the built command-line tool"
#endif

namespace lanehough {
namespace {

using testing::TempDir;

struct RunResult {
  int status;
  std::string output;
};

RunResult run_cli(const std::string& args, const std::filesystem::path& cwd) {
  const auto log = cwd / "cli.log";
  const std::string cmd = "cd '" + cwd.string() + "' && '" LANEHOUGH_CLI "' " + args + " > '" +
                          log.string() + "' 2>&1";
  const int raw = std::system(cmd.c_str());
  std::ifstream in(log);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, ss.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t line_count(const std::filesystem::path& p) {
  const auto s = slurp(p);
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    save_image(make_lane_scene(512, 512, 1).image, dir / "road.pgm", ImageFormat::pgm);
  }
  TempDir dir;
};

TEST_F(CliTest, DetectWithDefaults) {
  const auto r = run_cli("detect road.pgm", dir.path());
  ASSERT_EQ(r.status, 0) << r.output;
  EXPECT_EQ(load_gray(dir / "road_overlay.png").width(), 512u);
  EXPECT_EQ(slurp(dir / "road_peaks.csv").substr(0, 20), "theta_deg,rho,votes\n");
  EXPECT_EQ(line_count(dir / "road_peaks.csv"), 3u);
  EXPECT_EQ(slurp(dir / "road_segments.csv").substr(0, 26), "x0,y0,x1,y1,theta_deg,rho\n");
  EXPECT_GE(line_count(dir / "road_segments.csv"), 3u);
}

TEST_F(CliTest, DetectIsByteIdenticalAcrossRunsAndStrategies) {
  ASSERT_EQ(run_cli("detect road.pgm -o a.png --peaks-csv a_p.csv --segments-csv a_s.csv "
                    "--dump-acc a.hacc --dump-binary a_bin.pgm --dump-edge a_edge.pgm",
                    dir.path()).status, 0);
  ASSERT_EQ(run_cli("detect road.pgm -o b.png --peaks-csv b_p.csv --segments-csv b_s.csv "
                    "--dump-acc b.hacc --dump-binary b_bin.pgm --dump-edge b_edge.pgm "
                    "--strategy atomic --workers 4 --block 8",
                    dir.path()).status, 0);
  for (const auto& [a, b] : std::vector<std::pair<std::string, std::string>>{
           {"a.png", "b.png"}, {"a_p.csv", "b_p.csv"}, {"a_s.csv", "b_s.csv"},
           {"a.hacc", "b.hacc"}, {"a_bin.pgm", "b_bin.pgm"}, {"a_edge.pgm", "b_edge.pgm"}}) {
    EXPECT_EQ(slurp(dir / a), slurp(dir / b)) << a;
  }
  EXPECT_EQ(load_accumulator(dir / "a.hacc").n_rho(), 1451u);
}

TEST_F(CliTest, DetectWritesEmptyCsvsWhenNothingIsFound) {
  save_image(GrayImage(64, 64, 90), dir / "flat.pgm", ImageFormat::pgm);
  const auto r = run_cli("detect flat.pgm", dir.path());
  ASSERT_EQ(r.status, 0) << r.output;
  EXPECT_EQ(slurp(dir / "flat_peaks.csv"), "theta_deg,rho,votes\n");
  EXPECT_EQ(slurp(dir / "flat_segments.csv"), "x0,y0,x1,y1,theta_deg,rho\n");
}

TEST_F(CliTest, MissingInputIsRuntimeError) {
  const auto r = run_cli("detect no_such_image.pgm", dir.path());
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.output.find("no_such_image.pgm"), std::string::npos) << r.output;
}

TEST_F(CliTest, BadFlagsAreUsageErrors) {
  auto r = run_cli("detect road.pgm --strategy warp", dir.path());
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.output.find("Usage"), std::string::npos) << r.output;
  EXPECT_EQ(run_cli("detect road.pgm --threshold 300", dir.path()).status, 2);
  EXPECT_EQ(run_cli("detect road.pgm --workers 0", dir.path()).status, 2);
  EXPECT_EQ(run_cli("detect road.pgm --nhood-theta 4", dir.path()).status, 2);
  EXPECT_EQ(run_cli("detect", dir.path()).status, 2);
  EXPECT_EQ(run_cli("", dir.path()).status, 2);
  EXPECT_EQ(run_cli("bench --sizes 128x", dir.path()).status, 2);
  EXPECT_EQ(run_cli("bench --sizes 128x128 --strategies warp", dir.path()).status, 2);
}

TEST_F(CliTest, DumpAcc) {
  ASSERT_EQ(run_cli("dump-acc road.pgm out.hacc --trig q15 --strategy symmetric", dir.path()).status, 0);
  const auto acc = load_accumulator(dir / "out.hacc");
  EXPECT_EQ(acc.width(), 512u);
  EXPECT_EQ(acc.n_theta(), 180u);
  EXPECT_EQ(run_cli("dump-acc missing.pgm out.hacc", dir.path()).status, 1);
}

TEST_F(CliTest, BenchWritesRequestedRows) {
  const auto r = run_cli("bench --sizes 128x128 --strategies reference --repeats 3 --csv out.csv",
                         dir.path());
  ASSERT_EQ(r.status, 0) << r.output;
  EXPECT_EQ(line_count(dir / "out.csv"), 2u);
  ASSERT_EQ(run_cli("bench --sizes 64x64,96x80 --strategies reference,atomic --workers 2 "
                    "--trig q15 --repeats 1 --csv two.csv",
                    dir.path()).status, 0);
  EXPECT_EQ(line_count(dir / "two.csv"), 5u);
  EXPECT_NE(slurp(dir / "two.csv").find("96,80,atomic,2,q15,"), std::string::npos);
}

TEST(ParseSizes, AcceptsListsAndRejectsJunk) {
  EXPECT_EQ(parse_sizes("128x128"), (std::vector<ImageSize>{{128, 128}}));
  EXPECT_EQ(parse_sizes("1x2,30x40"), (std::vector<ImageSize>{{1, 2}, {30, 40}}));
  for (const char* bad : {"128x", "x128", "128", "", "128x128,", "0x5", "12ax4", "-1x4"}) {
    EXPECT_THROW(parse_sizes(bad), UsageError) << bad;
  }
  EXPECT_EQ(default_size_ladder().front(), (ImageSize{128, 128}));
  EXPECT_EQ(default_size_ladder().back(), (ImageSize{1024, 1024}));
}

TEST(ParseStrategies, SharedWorkerSettings) {
  const auto s = parse_strategies("reference,atomic", 3, 8);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[1].kind, StrategyKind::pixel_parallel_atomic);
  EXPECT_EQ(s[1].workers, 3u);
  EXPECT_EQ(s[1].block, 8u);
  EXPECT_THROW(parse_strategies("reference,", 1, 16), UsageError);
}

TEST(RunDetect, OverlayIsAlwaysPng) {
  TempDir dir;
  save_image(GrayImage(16, 16, 3), dir / "in.pgm", ImageFormat::pgm);
  DetectConfig cfg;
  cfg.input = dir / "in.pgm";
  cfg.overlay = dir / "o.pgm";
  cfg.peaks_csv = dir / "p.csv";
  cfg.segments_csv = dir / "s.csv";
  std::ostringstream err;
  // The overlay is always PNG, so a .pgm name still succeeds.
  EXPECT_EQ(run_detect(cfg, err), 0) << err.str();
  EXPECT_EQ(load_gray(dir / "o.pgm").width(), 16u);
}

}  // namespace
}  // namespace lanehough
