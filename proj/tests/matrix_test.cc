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

#include <vector>

#include <gtest/gtest.h>

#include "mvhe/errors.h"
#include "mvhe/random.h"

namespace {

using ::mvhe::FieldContext;
using ::mvhe::FieldVector;
using ::mvhe::MatrixFq;
using ::mvhe::RandomStream;

MatrixFq RandomMatrix(const FieldContext& ctx, std::size_t rows,
                      std::size_t cols, RandomStream& stream) {
  std::vector<FieldVector> out;
  for (std::size_t i = 0; i < rows; ++i) {
    out.push_back(mvhe::SampleUniformVector(stream, ctx, cols));
  }
  return MatrixFq::FromRows(ctx, cols, out);
}

// A rank-deficient matrix: random combinations of `rank` random rows.
MatrixFq LowRankMatrix(const FieldContext& ctx, std::size_t rows,
                       std::size_t cols, std::size_t rank,
                       RandomStream& stream) {
  MatrixFq base = RandomMatrix(ctx, rank, cols, stream);
  MatrixFq mix = RandomMatrix(ctx, rows, rank, stream);
  return mix.Multiply(base);
}

bool IsReducedEchelon(const MatrixFq& r) {
  std::size_t last_pivot = 0;
  bool seen_zero_row = false;
  for (std::size_t i = 0; i < r.rows(); ++i) {
    std::size_t c = 0;
    while (c < r.cols() && r(i, c) == 0) ++c;
    if (c == r.cols()) {
      seen_zero_row = true;
      continue;
    }
    if (seen_zero_row) return false;
    if (i > 0 && c <= last_pivot) return false;
    if (r(i, c) != 1) return false;
    for (std::size_t k = 0; k < r.rows(); ++k) {
      if (k != i && r(k, c) != 0) return false;
    }
    last_pivot = c;
  }
  return true;
}

TEST(RrefTest, IdentityAndZero) {
  FieldContext ctx(10007);
  MatrixFq id = MatrixFq::Identity(ctx, 3);
  mvhe::RrefResult r = mvhe::Rref(id);
  EXPECT_EQ(r.reduced, id);
  EXPECT_EQ(r.rank, 3u);
  EXPECT_EQ(r.pivot_columns, (std::vector<std::size_t>{0, 1, 2}));

  MatrixFq zero(ctx, 3, 4);
  r = mvhe::Rref(zero);
  EXPECT_EQ(r.reduced, zero);
  EXPECT_EQ(r.rank, 0u);
}

TEST(RrefTest, RandomMatricesReduceToEquivalentEchelonForm) {
  FieldContext ctx(10007);
  RandomStream stream(11);
  for (int trial = 0; trial < 20; ++trial) {
    MatrixFq m = trial % 2 ? RandomMatrix(ctx, 10, 20, stream)
                           : LowRankMatrix(ctx, 10, 20, 6, stream);
    mvhe::RrefResult r = mvhe::Rref(m);
    EXPECT_TRUE(IsReducedEchelon(r.reduced));
    EXPECT_EQ(r.rank, trial % 2 ? 10u : 6u);
    // Mutual row-space containment: rows of M lie in the span of R, and
    // stacking R onto M does not raise the rank.
    for (const FieldVector& row : m.RowVectors()) {
      EXPECT_TRUE(mvhe::RowSpaceContains(r, row));
    }
    EXPECT_EQ(mvhe::Rank(m.StackedWith(r.reduced)), mvhe::Rank(m));
    EXPECT_EQ(mvhe::Rref(r.reduced).reduced, r.reduced);
  }
}

TEST(NullspaceTest, SmallCases) {
  FieldContext ctx(7);
  EXPECT_EQ(mvhe::NullspaceBasis(MatrixFq::Identity(ctx, 4)).rows(), 0u);

  MatrixFq ones = MatrixFq::FromRows(ctx, 3, {FieldVector(ctx, {1, 1, 1})});
  MatrixFq ns = mvhe::NullspaceBasis(ones);
  ASSERT_EQ(ns.rows(), 2u);
  EXPECT_EQ(mvhe::Rank(ns), 2u);
  for (const FieldVector& v : ns.RowVectors()) EXPECT_EQ(v.Sum(), 0u);
}

TEST(NullspaceTest, RandomMatrices) {
  FieldContext ctx(10007);
  RandomStream stream(12);
  for (int trial = 0; trial < 20; ++trial) {
    MatrixFq m = LowRankMatrix(ctx, 8, 15, 1 + trial % 8, stream);
    MatrixFq ns = mvhe::NullspaceBasis(m);
    EXPECT_EQ(mvhe::Rank(m) + ns.rows(), m.cols());
    for (const FieldVector& v : ns.RowVectors()) EXPECT_TRUE(m.Apply(v).IsZero());
    EXPECT_EQ(mvhe::Rank(mvhe::RowSpaceBasis(m).StackedWith(ns)), m.cols());
  }
}

TEST(SolveLinearTest, ConsistentAndInconsistent) {
  FieldContext ctx(10007);
  RandomStream stream(13);
  MatrixFq a = RandomMatrix(ctx, 6, 6, stream);
  FieldVector x = mvhe::SampleUniformVector(stream, ctx, 6);
  auto solved = mvhe::SolveLinear(a, a.Apply(x));
  ASSERT_TRUE(solved.has_value());
  EXPECT_EQ(*solved, x);

  MatrixFq b = MatrixFq::FromRows(ctx, 2, {FieldVector(ctx, {1, 1}), FieldVector(ctx, {2, 2})});
  EXPECT_FALSE(mvhe::SolveLinear(b, FieldVector(ctx, {1, 3})).has_value());
}

TEST(SolveHeadTest, DecoupledSystem) {
  FieldContext ctx(10007);
  // V = [I_2 | 0]: the head must vanish, the tail is free.
  MatrixFq v(ctx, 2, 5);
  v.Set(0, 0, 1);
  v.Set(1, 1, 1);
  FieldVector tail(ctx, {4, -1, 9});
  auto s = mvhe::SolveHeadForOrthogonality(v, tail, 2);
  ASSERT_TRUE(s.has_value());
  EXPECT_TRUE(v.Apply(*s).IsZero());
  EXPECT_EQ(s->Slice(2, 3), tail);
}

TEST(SolveHeadTest, HomogeneousTail) {
  FieldContext ctx(10007);
  RandomStream stream(14);
  MatrixFq v = RandomMatrix(ctx, 3, 7, stream);
  auto s = mvhe::SolveHeadForOrthogonality(v, FieldVector(ctx, 4), 3);
  ASSERT_TRUE(s.has_value());
  EXPECT_TRUE(v.Apply(*s).IsZero());
  EXPECT_TRUE(s->Slice(3, 4).IsZero());
}

TEST(SolveHeadTest, FullRankHeadAlwaysSolves) {
  FieldContext ctx(10007);
  RandomStream stream(15);
  MatrixFq v = RandomMatrix(ctx, 4, 9, stream);
  ASSERT_EQ(mvhe::Rank(v.ColumnBlock(0, 4)), 4u);
  for (int i = 0; i < 500; ++i) {
    FieldVector tail = mvhe::SampleUniformVector(stream, ctx, 5);
    auto s = mvhe::SolveHeadForOrthogonality(v, tail, 4);
    ASSERT_TRUE(s.has_value());
    EXPECT_TRUE(v.Apply(*s).IsZero());
    EXPECT_EQ(s->Slice(4, 5), tail);
  }
}

TEST(SolveHeadTest, DimensionMismatchThrows) {
  FieldContext ctx(10007);
  MatrixFq v(ctx, 2, 5);
  EXPECT_THROW(mvhe::SolveHeadForOrthogonality(v, FieldVector(ctx, 2), 2),
               mvhe::ArgumentError);
}

TEST(MatrixTest, ProductTransposeAndApply) {
  FieldContext ctx(10007);
  RandomStream stream(16);
  MatrixFq a = RandomMatrix(ctx, 3, 4, stream);
  MatrixFq b = RandomMatrix(ctx, 4, 5, stream);
  FieldVector x = mvhe::SampleUniformVector(stream, ctx, 5);
  EXPECT_EQ(a.Multiply(b).Apply(x), a.Apply(b.Apply(x)));
  EXPECT_EQ(a.Transpose().Transpose(), a);
  FieldVector w = mvhe::SampleUniformVector(stream, ctx, 3);
  EXPECT_EQ(a.CombineRows(w), a.Transpose().Apply(w));
  EXPECT_THROW(a.Multiply(a), mvhe::ArgumentError);
}

}  // namespace
