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

// Writes the seeded synthetic two-lane scene used by the benchmark.
//
//   sample_make_scene out.pgm [width height seed]

#include <cstdlib>
#include <iostream>

#include "lanehough/lanehough.hpp"

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: " << argv[0] << " out.{pgm,png} [width height seed]\n";
    return 2;
  }
  const std::size_t width = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 512;
  const std::size_t height = argc > 3 ? std::strtoul(argv[3], nullptr, 10) : 512;
  const std::uint64_t seed = argc > 4 ? std::strtoull(argv[4], nullptr, 10) : 1;
  try {
    const auto scene = lanehough::make_lane_scene(width, height, seed);
    lanehough::save_image(scene.image, argv[1], lanehough::format_for(argv[1]));
    for (const auto& lane : scene.lanes) {
      std::cout << "lane theta_bin " << lane.theta_bin << " rho " << lane.rho << '\n';
    }
  } catch (const lanehough::Error& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
  return 0;
}
