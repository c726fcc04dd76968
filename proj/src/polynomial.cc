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

#include "mvhe/polynomial.h"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

#include "mvhe/errors.h"

namespace mvhe {
namespace {

// Appends all exponents of total degree `remaining` over variables
// [var, ell) to `out`, lexicographically descending.
void AppendDegree(int ell, int var, int remaining, Exponent& current,
                  std::vector<Exponent>& out) {
  if (var == ell - 1) {
    current[var] = remaining;
    out.push_back(current);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    current[var] = e;
    AppendDegree(ell, var + 1, remaining - e, current, out);
  }
  current[var] = 0;
}

}  // namespace

std::size_t MonomialCount(int ell, int r) {
  if (ell < 1 || r < 1) {
    throw ArgumentError("MonomialCount requires ell >= 1 and r >= 1");
  }
  // C(ell + r, r) built incrementally; each step is exact.
  std::size_t c = 1;
  for (int i = 1; i <= r; ++i) {
    c = c * static_cast<std::size_t>(ell + i) / static_cast<std::size_t>(i);
  }
  return c;
}

MonomialIndex::MonomialIndex(int ell, int r) : ell_(ell), r_(r) {
  Exponent current(ell, 0);
  for (int d = 0; d <= r; ++d) AppendDegree(ell, 0, d, current, exponents_);
  degrees_.reserve(exponents_.size());
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    degrees_.push_back(std::accumulate(exponents_[i].begin(),
                                       exponents_[i].end(), 0));
    positions_.emplace(exponents_[i], i);
  }
}

std::shared_ptr<const MonomialIndex> MonomialIndex::Create(int ell, int r) {
  if (ell < 1 || r < 0) {
    throw ArgumentError("MonomialIndex requires ell >= 1 and r >= 0");
  }
  return std::shared_ptr<const MonomialIndex>(new MonomialIndex(ell, r));
}

std::size_t MonomialIndex::position(const Exponent& e) const {
  if (static_cast<int>(e.size()) != ell_) {
    throw ArgumentError("exponent has " + std::to_string(e.size()) +
                        " entries, expected " + std::to_string(ell_));
  }
  auto it = positions_.find(e);
  if (it == positions_.end()) {
    throw ArgumentError("exponent is negative or exceeds degree bound " +
                        std::to_string(r_));
  }
  return it->second;
}

Polynomial::Polynomial(IndexPtr index, FieldVector coeffs)
    : index_(std::move(index)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != index_->size()) {
    throw ArgumentError("coefficient vector has length " +
                        std::to_string(coeffs_.size()) + ", index has " +
                        std::to_string(index_->size()) + " monomials");
  }
}

Polynomial Polynomial::Zero(IndexPtr index, const FieldContext& ctx) {
  FieldVector zeros(ctx, index->size());
  return Polynomial(std::move(index), std::move(zeros));
}

Polynomial Polynomial::Monomial(IndexPtr index, const FieldContext& ctx,
                                const Exponent& e, std::uint64_t coeff) {
  FieldVector c(ctx, index->size());
  c.SetCanonical(index->position(e), ctx.ReduceUnsigned(coeff));
  return Polynomial(std::move(index), std::move(c));
}

Polynomial Polynomial::FromTerms(
    IndexPtr index, const FieldContext& ctx,
    const std::vector<std::pair<std::uint64_t, Exponent>>& terms) {
  FieldVector c(ctx, index->size());
  for (const auto& [coeff, exps] : terms) {
    std::size_t pos = index->position(exps);
    c.SetCanonical(pos, ctx.Add(c[pos], ctx.ReduceUnsigned(coeff)));
  }
  return Polynomial(std::move(index), std::move(c));
}

int Polynomial::Degree() const {
  int degree = -1;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) degree = std::max(degree, index_->TotalDegree(i));
  }
  return degree;
}

Polynomial Polynomial::Reindexed(IndexPtr target) const {
  if (target->ell() != index_->ell()) {
    throw ArgumentError("cannot reindex across variable counts");
  }
  FieldVector c(context(), target->size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (index_->TotalDegree(i) > target->degree_bound()) {
      throw ArgumentError("term of degree " +
                          std::to_string(index_->TotalDegree(i)) +
                          " does not fit degree bound " +
                          std::to_string(target->degree_bound()));
    }
    c.SetCanonical(target->position(index_->exponent(i)), coeffs_[i]);
  }
  return Polynomial(std::move(target), std::move(c));
}

std::vector<std::pair<std::uint64_t, Exponent>> Polynomial::Terms() const {
  std::vector<std::pair<std::uint64_t, Exponent>> out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) out.emplace_back(coeffs_[i], index_->exponent(i));
  }
  return out;
}

FieldVector EvalMonomials(const MonomialIndex& index, const FieldVector& z) {
  if (static_cast<int>(z.size()) != index.ell()) {
    throw ArgumentError("point has " + std::to_string(z.size()) +
                        " coordinates, expected " +
                        std::to_string(index.ell()));
  }
  const FieldContext& ctx = z.context();
  const int r = index.degree_bound();
  // powers[v][k] = z_v^k
  std::vector<std::vector<std::uint64_t>> powers(
      index.ell(), std::vector<std::uint64_t>(r + 1, 1));
  for (int v = 0; v < index.ell(); ++v) {
    for (int k = 1; k <= r; ++k) {
      powers[v][k] = ctx.Mul(powers[v][k - 1], z[v]);
    }
  }
  FieldVector out(ctx, index.size());
  for (std::size_t i = 0; i < index.size(); ++i) {
    const Exponent& e = index.exponent(i);
    std::uint64_t value = 1;
    for (int v = 0; v < index.ell(); ++v) value = ctx.Mul(value, powers[v][e[v]]);
    out.SetCanonical(i, value);
  }
  return out;
}

FieldElement PolyEval(const Polynomial& f, const FieldVector& z) {
  CheckSameContext(f.context(), z.context());
  FieldVector monomials = EvalMonomials(*f.index(), z);
  return FieldElement::FromCanonical(f.context(), f.coeffs().Dot(monomials));
}

Polynomial PolyMul(const Polynomial& f, const Polynomial& g) {
  CheckSameContext(f.context(), g.context());
  if (f.index()->ell() != g.index()->ell()) {
    throw ArgumentError("PolyMul operands have different variable counts");
  }
  const FieldContext& ctx = f.context();
  const int ell = f.index()->ell();
  IndexPtr target = MonomialIndex::Create(
      ell, f.index()->degree_bound() + g.index()->degree_bound());
  FieldVector c(ctx, target->size());
  Exponent sum(ell, 0);
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    std::uint64_t a = f.coeffs()[i];
    if (a == 0) continue;
    const Exponent& ei = f.index()->exponent(i);
    for (std::size_t j = 0; j < g.coeffs().size(); ++j) {
      std::uint64_t b = g.coeffs()[j];
      if (b == 0) continue;
      const Exponent& ej = g.index()->exponent(j);
      for (int v = 0; v < ell; ++v) sum[v] = ei[v] + ej[v];
      std::size_t pos = target->position(sum);
      c.SetCanonical(pos, ctx.Add(c[pos], ctx.Mul(a, b)));
    }
  }
  return Polynomial(std::move(target), std::move(c));
}

MatrixFq EvaluationMatrix(const MonomialIndex& index,
                          const std::vector<FieldVector>& points) {
  if (points.empty()) throw ArgumentError("EvaluationMatrix needs points");
  std::vector<FieldVector> rows;
  rows.reserve(points.size());
  for (const FieldVector& z : points) rows.push_back(EvalMonomials(index, z));
  return MatrixFq::FromRows(points.front().context(), index.size(), rows);
}

IdealSpec::IdealSpec(std::vector<Polynomial> generators)
    : generators_(std::move(generators)) {
  if (generators_.empty()) throw ArgumentError("ideal has no generators");
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const Polynomial& g = generators_[i];
    if (g.IsZero()) {
      throw ArgumentError("generator " + std::to_string(i) + " is zero");
    }
    if (g.index()->ell() != ell()) {
      throw ArgumentError("generator " + std::to_string(i) +
                          " has a different variable count");
    }
    CheckSameContext(g.context(), context());
  }
}

int IdealSpec::MaxDegree() const {
  int d = 0;
  for (const Polynomial& g : generators_) d = std::max(d, g.Degree());
  return d;
}

MatrixFq IdealTruncatedBasis(const IdealSpec& ideal, int r) {
  const FieldContext& ctx = ideal.context();
  IndexPtr target = MonomialIndex::Create(ideal.ell(), r);
  std::vector<FieldVector> multiples;
  for (std::size_t gi = 0; gi < ideal.generators().size(); ++gi) {
    const Polynomial& g = ideal.generators()[gi];
    const int dg = g.Degree();
    if (dg > r) {
      throw ArgumentError("generator " + std::to_string(gi) + " has degree " +
                          std::to_string(dg) + " > r = " + std::to_string(r));
    }
    IndexPtr cofactors = MonomialIndex::Create(ideal.ell(), r - dg);
    for (std::size_t m = 0; m < cofactors->size(); ++m) {
      Polynomial mono = Polynomial::Monomial(cofactors, ctx,
                                             cofactors->exponent(m));
      multiples.push_back(PolyMul(mono, g).Reindexed(target).coeffs());
    }
  }
  return RowSpaceBasis(MatrixFq::FromRows(ctx, target->size(), multiples));
}

}  // namespace mvhe
