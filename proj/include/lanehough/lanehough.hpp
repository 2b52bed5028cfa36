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

#ifndef LANEHOUGH_LANEHOUGH_HPP
#define LANEHOUGH_LANEHOUGH_HPP

#include "lanehough/bench.hpp"
#include "lanehough/edge.hpp"
#include "lanehough/errors.hpp"
#include "lanehough/hough.hpp"
#include "lanehough/image.hpp"
#include "lanehough/imgio.hpp"
#include "lanehough/lanes.hpp"
#include "lanehough/pipeline.hpp"

#endif  // LANEHOUGH_LANEHOUGH_HPP
