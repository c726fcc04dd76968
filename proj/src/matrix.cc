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

#include "mvhe/matrix.h"

#include <string>
#include <utility>

#include "mvhe/errors.h"

namespace mvhe {

MatrixFq::MatrixFq(const FieldContext& ctx, std::size_t rows, std::size_t cols)
    : ctx_(ctx), rows_(rows), cols_(cols), entries_(rows * cols, 0) {}

MatrixFq::MatrixFq(const FieldContext& ctx, std::size_t rows, std::size_t cols,
                   std::vector<std::uint64_t> entries)
    : ctx_(ctx), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw ArgumentError("matrix entry count " +
                        std::to_string(entries_.size()) + " != " +
                        std::to_string(rows_) + "x" + std::to_string(cols_));
  }
  for (auto& e : entries_) e = ctx_.ReduceUnsigned(e);
}

MatrixFq MatrixFq::Identity(const FieldContext& ctx, std::size_t n) {
  MatrixFq m(ctx, n, n);
  for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = 1;
  return m;
}

MatrixFq MatrixFq::FromRows(const FieldContext& ctx, std::size_t cols,
                            const std::vector<FieldVector>& rows) {
  MatrixFq m(ctx, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    CheckSameContext(ctx, rows[r].context());
    if (rows[r].size() != cols) {
      throw ArgumentError("row " + std::to_string(r) + " has length " +
                          std::to_string(rows[r].size()) + ", expected " +
                          std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) m.entries_[r * cols + c] = rows[r][c];
  }
  return m;
}

FieldVector MatrixFq::Row(std::size_t r) const {
  if (r >= rows_) throw ArgumentError("row index out of range");
  return FieldVector(ctx_, std::vector<std::uint64_t>(
                               entries_.begin() + r * cols_,
                               entries_.begin() + (r + 1) * cols_));
}

std::vector<FieldVector> MatrixFq::RowVectors() const {
  std::vector<FieldVector> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(Row(r));
  return out;
}

FieldVector MatrixFq::Apply(const FieldVector& v) const {
  CheckSameContext(ctx_, v.context());
  if (v.size() != cols_) {
    throw ArgumentError("matrix-vector size mismatch: " +
                        std::to_string(cols_) + " columns, vector of " +
                        std::to_string(v.size()));
  }
  FieldVector out(ctx_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    const std::uint64_t* row = entries_.data() + r * cols_;
    for (std::size_t c = 0; c < cols_; ++c) {
      acc = ctx_.Add(acc, ctx_.Mul(row[c], v[c]));
    }
    out.SetCanonical(r, acc);
  }
  return out;
}

FieldVector MatrixFq::CombineRows(const FieldVector& weights) const {
  CheckSameContext(ctx_, weights.context());
  if (weights.size() != rows_) {
    throw ArgumentError("row-combination size mismatch");
  }
  std::vector<std::uint64_t> acc(cols_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t w = weights[r];
    if (w == 0) continue;
    const std::uint64_t* row = entries_.data() + r * cols_;
    for (std::size_t c = 0; c < cols_; ++c) {
      acc[c] = ctx_.Add(acc[c], ctx_.Mul(w, row[c]));
    }
  }
  return FieldVector(ctx_, std::move(acc));
}

MatrixFq MatrixFq::Multiply(const MatrixFq& other) const {
  CheckSameContext(ctx_, other.ctx_);
  if (cols_ != other.rows_) throw ArgumentError("matrix product size mismatch");
  MatrixFq out(ctx_, rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      std::uint64_t a = entries_[i * cols_ + k];
      if (a == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) {
        std::uint64_t& dst = out.entries_[i * other.cols_ + j];
        dst = ctx_.Add(dst, ctx_.Mul(a, other.entries_[k * other.cols_ + j]));
      }
    }
  }
  return out;
}

MatrixFq MatrixFq::Transpose() const {
  MatrixFq out(ctx_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      out.entries_[c * rows_ + r] = entries_[r * cols_ + c];
    }
  }
  return out;
}

MatrixFq MatrixFq::ColumnBlock(std::size_t begin, std::size_t count) const {
  if (begin + count > cols_) throw ArgumentError("column block out of range");
  MatrixFq out(ctx_, rows_, count);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < count; ++c) {
      out.entries_[r * count + c] = entries_[r * cols_ + begin + c];
    }
  }
  return out;
}

MatrixFq MatrixFq::TopRows(std::size_t count) const {
  if (count > rows_) throw ArgumentError("row block out of range");
  return MatrixFq(ctx_, count, cols_,
                  std::vector<std::uint64_t>(entries_.begin(),
                                             entries_.begin() + count * cols_));
}

MatrixFq MatrixFq::StackedWith(const MatrixFq& other) const {
  CheckSameContext(ctx_, other.ctx_);
  if (cols_ != other.cols_) throw ArgumentError("stack column mismatch");
  std::vector<std::uint64_t> entries = entries_;
  entries.insert(entries.end(), other.entries_.begin(), other.entries_.end());
  return MatrixFq(ctx_, rows_ + other.rows_, cols_, std::move(entries));
}

RrefResult Rref(const MatrixFq& m) {
  const FieldContext& ctx = m.context();
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::uint64_t> a(m.entries().begin(), m.entries().end());
  auto at = [&](std::size_t r, std::size_t c) -> std::uint64_t& {
    return a[r * cols + c];
  };

  RrefResult result{MatrixFq(ctx, rows, cols), 0, {}};
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
    std::size_t found = rows;
    for (std::size_t r = pivot_row; r < rows; ++r) {
      if (at(r, col) != 0) {
        found = r;
        break;
      }
    }
    if (found == rows) continue;
    if (found != pivot_row) {
      for (std::size_t c = 0; c < cols; ++c) {
        std::swap(at(found, c), at(pivot_row, c));
      }
    }
    std::uint64_t inv = ctx.Inv(at(pivot_row, col));
    for (std::size_t c = col; c < cols; ++c) {
      at(pivot_row, c) = ctx.Mul(at(pivot_row, c), inv);
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == pivot_row) continue;
      std::uint64_t factor = at(r, col);
      if (factor == 0) continue;
      for (std::size_t c = col; c < cols; ++c) {
        at(r, c) = ctx.Sub(at(r, c), ctx.Mul(factor, at(pivot_row, c)));
      }
    }
    result.pivot_columns.push_back(col);
    ++pivot_row;
  }
  result.rank = pivot_row;
  result.reduced = MatrixFq(ctx, rows, cols, std::move(a));
  return result;
}

std::size_t Rank(const MatrixFq& m) { return Rref(m).rank; }

MatrixFq RowSpaceBasis(const MatrixFq& m) {
  RrefResult r = Rref(m);
  return r.reduced.TopRows(r.rank);
}

MatrixFq NullspaceBasis(const MatrixFq& m) {
  const FieldContext& ctx = m.context();
  RrefResult r = Rref(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : r.pivot_columns) is_pivot[c] = true;

  MatrixFq basis(ctx, cols - r.rank, cols);
  std::size_t out_row = 0;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    basis.Set(out_row, free, 1);
    for (std::size_t i = 0; i < r.rank; ++i) {
      basis.Set(out_row, r.pivot_columns[i],
                ctx.Neg(r.reduced(i, free)));
    }
    ++out_row;
  }
  return basis;
}

bool RowSpaceContains(const RrefResult& echelon, const FieldVector& v) {
  const MatrixFq& red = echelon.reduced;
  CheckSameContext(red.context(), v.context());
  if (v.size() != red.cols()) throw ArgumentError("membership size mismatch");
  const FieldContext& ctx = v.context();
  FieldVector residual = v;
  for (std::size_t i = 0; i < echelon.rank; ++i) {
    std::size_t pc = echelon.pivot_columns[i];
    std::uint64_t factor = residual[pc];
    if (factor == 0) continue;
    for (std::size_t c = 0; c < red.cols(); ++c) {
      residual.SetCanonical(
          c, ctx.Sub(residual[c], ctx.Mul(factor, red(i, c))));
    }
  }
  return residual.IsZero();
}

std::optional<FieldVector> SolveLinear(const MatrixFq& a,
                                       const FieldVector& b) {
  const FieldContext& ctx = a.context();
  CheckSameContext(ctx, b.context());
  if (b.size() != a.rows()) throw ArgumentError("SolveLinear size mismatch");
  const std::size_t n = a.cols();
  MatrixFq augmented(ctx, a.rows(), n + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) augmented.Set(r, c, a(r, c));
    augmented.Set(r, n, b[r]);
  }
  RrefResult red = Rref(augmented);
  if (!red.pivot_columns.empty() && red.pivot_columns.back() == n) {
    return std::nullopt;
  }
  FieldVector x(ctx, n);
  for (std::size_t i = 0; i < red.rank; ++i) {
    x.SetCanonical(red.pivot_columns[i], red.reduced(i, n));
  }
  return x;
}

std::optional<FieldVector> SolveHeadForOrthogonality(const MatrixFq& v,
                                                     const FieldVector& tail,
                                                     std::size_t head_len) {
  CheckSameContext(v.context(), tail.context());
  if (head_len + tail.size() != v.cols()) {
    throw ArgumentError("head_len + tail length (" +
                        std::to_string(head_len + tail.size()) +
                        ") != columns (" + std::to_string(v.cols()) + ")");
  }
  // V_head s1 = -V_tail s2.
  MatrixFq head = v.ColumnBlock(0, head_len);
  FieldVector rhs = -v.ColumnBlock(head_len, tail.size()).Apply(tail);
  std::optional<FieldVector> s1 = SolveLinear(head, rhs);
  if (!s1) return std::nullopt;
  return Concat(*s1, tail);
}

}  // namespace mvhe
