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

#include "redmule/matio.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "redmule/error.hpp"

namespace redmule {

namespace {

constexpr char kMagic[4] = {'R', 'M', 'A', 'T'};

uint32_t read_u32le(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (!in) throw Error(Errc::io, "rmat: truncated header");
  return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
         (static_cast<uint32_t>(b[2]) << 16) | (static_cast<uint32_t>(b[3]) << 24);
}

void write_u32le(std::ostream& out, uint32_t v) {
  char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
               static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
  out.write(b, 4);
}

}  // namespace

MatF16 read_rmat(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || magic[0] != kMagic[0] || magic[1] != kMagic[1] || magic[2] != kMagic[2] ||
      magic[3] != kMagic[3]) {
    throw Error(Errc::io, "rmat: bad magic");
  }
  uint32_t rows = read_u32le(in);
  uint32_t cols = read_u32le(in);
  MatF16 m(rows, cols);
  for (auto& v : m.data) {
    unsigned char b[2];
    in.read(reinterpret_cast<char*>(b), 2);
    if (!in) throw Error(Errc::io, "rmat: truncated payload");
    v = F16::from_bits(static_cast<uint16_t>(b[0] | (b[1] << 8)));
  }
  return m;
}

void write_rmat(std::ostream& out, const MatF16& m) {
  out.write(kMagic, 4);
  write_u32le(out, static_cast<uint32_t>(m.rows));
  write_u32le(out, static_cast<uint32_t>(m.cols));
  for (F16 v : m.data) {
    char b[2] = {static_cast<char>(v.bits & 0xff), static_cast<char>(v.bits >> 8)};
    out.write(b, 2);
  }
}

MatF16 read_csv_matrix(std::istream& in) {
  std::vector<std::vector<F16>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<F16> row;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
      // Tolerate surrounding spaces, the literal parser itself is strict.
      size_t b = field.find_first_not_of(" \t\r");
      size_t e = field.find_last_not_of(" \t\r");
      if (b == std::string::npos) throw Error(Errc::malformed_literal, "csv: empty field");
      row.push_back(from_decimal(field.substr(b, e - b + 1)));
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(Errc::io, "csv: ragged rows");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(Errc::io, "csv: empty matrix");
  MatF16 m(rows.size(), rows.front().size());
  for (size_t r = 0; r < m.rows; ++r)
    for (size_t c = 0; c < m.cols; ++c) m.at(r, c) = rows[r][c];
  return m;
}

MatF16 load_matrix(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open '" + path + "'");
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0) {
    return read_csv_matrix(in);
  }
  return read_rmat(in);
}

void save_rmat(const std::string& path, const MatF16& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io, "cannot open '" + path + "' for writing");
  write_rmat(out, m);
}

}  // namespace redmule
