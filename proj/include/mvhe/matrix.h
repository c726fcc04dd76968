/*
 * Copyright 2026 The mvhe Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef MVHE_MATRIX_H_
#define MVHE_MATRIX_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mvhe/field.h"

namespace mvhe {

// Dense row-major matrix over F_q.
class MatrixFq {
 public:
  MatrixFq(const FieldContext& ctx, std::size_t rows, std::size_t cols);
  // Entries are reduced mod q. Throws ArgumentError on a size mismatch.
  MatrixFq(const FieldContext& ctx, std::size_t rows, std::size_t cols,
           std::vector<std::uint64_t> entries);

  static MatrixFq Identity(const FieldContext& ctx, std::size_t n);
  // Rows must share one length and context. An empty list gives a 0 x cols
  // matrix.
  static MatrixFq FromRows(const FieldContext& ctx, std::size_t cols,
                           const std::vector<FieldVector>& rows);

  const FieldContext& context() const { return ctx_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::uint64_t operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }
  void Set(std::size_t r, std::size_t c, std::uint64_t value) {
    entries_[r * cols_ + c] = ctx_.ReduceUnsigned(value);
  }
  std::span<const std::uint64_t> entries() const { return entries_; }

  FieldVector Row(std::size_t r) const;
  std::vector<FieldVector> RowVectors() const;

  // M * v, v of length cols().
  FieldVector Apply(const FieldVector& v) const;
  // v^T * M, v of length rows(): the combination of rows weighted by v.
  FieldVector CombineRows(const FieldVector& weights) const;

  MatrixFq Multiply(const MatrixFq& other) const;
  MatrixFq Transpose() const;
  // Columns [begin, begin + count).
  MatrixFq ColumnBlock(std::size_t begin, std::size_t count) const;
  // First `count` rows.
  MatrixFq TopRows(std::size_t count) const;
  // Rows of this followed by rows of other.
  MatrixFq StackedWith(const MatrixFq& other) const;

  friend bool operator==(const MatrixFq&, const MatrixFq&) = default;

 private:
  FieldContext ctx_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint64_t> entries_;
};

struct RrefResult {
  MatrixFq reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;
};

// Reduced row echelon form by Gauss-Jordan elimination. The pivot in each
// column is the first nonzero entry at or below the current row.
RrefResult Rref(const MatrixFq& m);

std::size_t Rank(const MatrixFq& m);

// The nonzero rows of the RREF: a canonical basis of the row space.
MatrixFq RowSpaceBasis(const MatrixFq& m);

// Rows span {v : M v = 0}. Row count is cols - rank.
MatrixFq NullspaceBasis(const MatrixFq& m);

// True iff v lies in the row space described by `echelon` (an Rref result).
bool RowSpaceContains(const RrefResult& echelon, const FieldVector& v);

// Finds s = (head, tail) with V s = 0 and the last tail.size() coordinates
// equal to `tail`. Free head coordinates are set to zero. Returns nullopt when
// the system for the head is inconsistent.
//
// Throws ArgumentError when head_len + tail.size() != V.cols().
std::optional<FieldVector> SolveHeadForOrthogonality(const MatrixFq& v,
                                                     const FieldVector& tail,
                                                     std::size_t head_len);

// Solves A x = b. Free variables are zero. nullopt if inconsistent.
std::optional<FieldVector> SolveLinear(const MatrixFq& a, const FieldVector& b);

}  // namespace mvhe

#endif  // MVHE_MATRIX_H_
