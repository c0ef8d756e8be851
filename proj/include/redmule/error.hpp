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

#pragma once

#include <stdexcept>
#include <string>

namespace redmule {

enum class Errc {
  invalid_geometry,
  malformed_literal,
  dimension_mismatch,
  config,
  undefined_metric,
  io,
  schedule,
  verification,
};

/// All recoverable errors thrown by the library carry a kind so callers
/// (notably the CLI) can map them onto stable exit codes.
class Error : public std::runtime_error {
public:
  Error(Errc kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Errc kind() const { return kind_; }

private:
  Errc kind_;
};

}  // namespace redmule
