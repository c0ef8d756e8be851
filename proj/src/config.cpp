/*
 * Copyright (C) 2025 The redmule-sim authors
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

#include "redmule/config.hpp"

#include <string>

#include "redmule/error.hpp"

namespace redmule {

Geometry validate(Geometry g) {
  if (g.h < 1) {
    throw Error(Errc::invalid_geometry, "invalid geometry: H must be >= 1, got " + std::to_string(g.h));
  }
  if (g.l < 1) {
    throw Error(Errc::invalid_geometry, "invalid geometry: L must be >= 1, got " + std::to_string(g.l));
  }
  if (g.p < 0) {
    throw Error(Errc::invalid_geometry, "invalid geometry: P must be >= 0, got " + std::to_string(g.p));
  }
  return g;
}

}  // namespace redmule
