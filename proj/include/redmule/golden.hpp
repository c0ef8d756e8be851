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

#include <cstddef>
#include <vector>

#include "redmule/config.hpp"
#include "redmule/fp16.hpp"

namespace redmule {

/// Dense row-major matrix of binary16 values.
struct MatF16 {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<F16> data;

  MatF16() = default;
  MatF16(size_t r, size_t c) : rows(r), cols(c), data(r * c) {}

  F16& at(size_t r, size_t c) { return data[r * cols + c]; }
  F16 at(size_t r, size_t c) const { return data[r * cols + c]; }

  MatF16 transposed() const;

  friend bool operator==(const MatF16& a, const MatF16& b) {
    return a.rows == b.rows && a.cols == b.cols && a.data == b.data;
  }
};

/// Z = X * W with X of size M x N and W of size N x K.
struct GemmProblem {
  MatF16 x;  // M x N
  MatF16 w;  // N x K
};

/// Functional reference with the hardware ring's exact accumulation order:
/// Z[m][k] = fold over n of fma(X[m][n], W[n][k], acc), acc starting at +0.
/// Every intermediate is binary16 with one rounding per step.
MatF16 gemm_ordered(const GemmProblem& p);

/// Same as gemm_ordered but with the reduction length padded to the next
/// multiple of g.h, the way the tiler feeds the array: each padded step
/// computes fma(+0, +0, acc). Padded rows and columns never exist in the
/// output. A padded step maps a -0 accumulator to +0 under RNE; with the
/// accumulator initialized to +0 a -0 accumulator is unreachable, so this
/// matches gemm_ordered bit for bit on every input.
MatF16 gemm_padded(const GemmProblem& p, const Geometry& g);

}  // namespace redmule
