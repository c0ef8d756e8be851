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

#include "redmule/golden.hpp"

#include <string>

#include "redmule/error.hpp"

namespace redmule {

namespace {

void check_shapes(const GemmProblem& p) {
  if (p.x.cols != p.w.rows) {
    throw Error(Errc::dimension_mismatch,
                "gemm shape mismatch: X is " + std::to_string(p.x.rows) + "x" +
                    std::to_string(p.x.cols) + ", W is " + std::to_string(p.w.rows) + "x" +
                    std::to_string(p.w.cols));
  }
}

}  // namespace

MatF16 MatF16::transposed() const {
  MatF16 t(cols, rows);
  for (size_t r = 0; r < rows; ++r)
    for (size_t c = 0; c < cols; ++c) t.at(c, r) = at(r, c);
  return t;
}

MatF16 gemm_ordered(const GemmProblem& p) {
  check_shapes(p);
  const size_t m_dim = p.x.rows, n_dim = p.x.cols, k_dim = p.w.cols;
  MatF16 z(m_dim, k_dim);
  for (size_t m = 0; m < m_dim; ++m) {
    for (size_t k = 0; k < k_dim; ++k) {
      F16 acc = kPosZero;
      for (size_t n = 0; n < n_dim; ++n) {
        acc = fma(p.x.at(m, n), p.w.at(n, k), acc);
      }
      z.at(m, k) = acc;
    }
  }
  return z;
}

MatF16 gemm_padded(const GemmProblem& p, const Geometry& g) {
  check_shapes(p);
  const size_t m_dim = p.x.rows, n_dim = p.x.cols, k_dim = p.w.cols;
  const size_t h = static_cast<size_t>(g.h);
  const size_t n_pad = (n_dim + h - 1) / h * h;
  MatF16 z(m_dim, k_dim);
  for (size_t m = 0; m < m_dim; ++m) {
    for (size_t k = 0; k < k_dim; ++k) {
      F16 acc = kPosZero;
      for (size_t n = 0; n < n_pad; ++n) {
        F16 xv = n < n_dim ? p.x.at(m, n) : kPosZero;
        F16 wv = n < n_dim ? p.w.at(n, k) : kPosZero;
        acc = fma(xv, wv, acc);
      }
      z.at(m, k) = acc;
    }
  }
  return z;
}

}  // namespace redmule
