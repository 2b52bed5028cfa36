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

// Minimal library usage: load an image, find two lanes, print them.

#include <iostream>

#include "lanehough/lanehough.hpp"

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: " << argv[0] << " image.{pgm,png}\n";
    return 2;
  }
  using namespace lanehough;
  try {
    const GrayImage gray = load_gray(argv[1]);
    const BinaryImage edges = binarize(sobel_magnitude(gray), default_threshold);
    const TrigTable table = build_trig_table();
    const HoughAccumulator acc =
        accumulate(edges, table, {StrategyKind::angle_partitioned, 4});
    for (const Peak& peak : find_peaks(acc)) {
      std::cout << "theta " << table.theta_degrees(peak.theta_bin) << " deg, rho "
                << static_cast<long>(peak.rho_bin) - static_cast<long>(acc.rho_offset())
                << ", " << peak.votes << " votes\n";
      for (const LineSegment& s : extract_segments(edges, peak)) {
        std::cout << "  (" << s.p0.x << ", " << s.p0.y << ") - (" << s.p1.x << ", " << s.p1.y
                  << ")\n";
      }
    }
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
  return 0;
}
