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

#include <iosfwd>
#include <string>

#include "redmule/golden.hpp"

namespace redmule {

// Matrix container format: magic "RMAT", little-endian u32 rows, u32 cols,
// then rows*cols little-endian 16-bit patterns in row-major order.

MatF16 read_rmat(std::istream& in);
void write_rmat(std::ostream& out, const MatF16& m);

/// CSV of decimal literals, one row per line. All rows must have the same
/// number of fields; values go through the exact decimal parser.
MatF16 read_csv_matrix(std::istream& in);

/// Loads either format from a file: ".csv" suffix selects CSV, anything
/// else is read as RMAT.
MatF16 load_matrix(const std::string& path);
void save_rmat(const std::string& path, const MatF16& m);

}  // namespace redmule
