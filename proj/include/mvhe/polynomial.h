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

#ifndef MVHE_POLYNOMIAL_H_
#define MVHE_POLYNOMIAL_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mvhe/field.h"
#include "mvhe/matrix.h"

namespace mvhe {

using Exponent = std::vector<int>;

// C(ell + r, r). Throws ArgumentError unless ell >= 1 and r >= 1.
std::size_t MonomialCount(int ell, int r);

// The monomials of total degree <= r in ell variables, in graded order: by
// total degree, then lexicographically descending within a degree. For
// ell = 2, r = 2 this is 1, x1, x2, x1^2, x1 x2, x2^2.
class MonomialIndex {
 public:
  static constexpr const char* kOrderName = "grlex";

  // Shared, immutable. ell >= 1, r >= 0.
  static std::shared_ptr<const MonomialIndex> Create(int ell, int r);

  int ell() const { return ell_; }
  int degree_bound() const { return r_; }
  std::size_t size() const { return exponents_.size(); }

  const Exponent& exponent(std::size_t position) const {
    return exponents_.at(position);
  }
  // Throws ArgumentError if the exponent has the wrong arity, a negative
  // entry, or total degree > r.
  std::size_t position(const Exponent& e) const;
  int TotalDegree(std::size_t position) const { return degrees_.at(position); }

 private:
  MonomialIndex(int ell, int r);

  int ell_;
  int r_;
  std::vector<Exponent> exponents_;
  std::vector<int> degrees_;
  std::map<Exponent, std::size_t> positions_;
};

using IndexPtr = std::shared_ptr<const MonomialIndex>;

// A polynomial of degree <= index.degree_bound() stored as a dense
// coefficient vector over the index.
class Polynomial {
 public:
  Polynomial(IndexPtr index, FieldVector coeffs);
  static Polynomial Zero(IndexPtr index, const FieldContext& ctx);
  static Polynomial Monomial(IndexPtr index, const FieldContext& ctx,
                             const Exponent& e, std::uint64_t coeff = 1);
  // Sum of coeff * x^exps terms; repeated exponents accumulate.
  static Polynomial FromTerms(
      IndexPtr index, const FieldContext& ctx,
      const std::vector<std::pair<std::uint64_t, Exponent>>& terms);

  const IndexPtr& index() const { return index_; }
  const FieldVector& coeffs() const { return coeffs_; }
  const FieldContext& context() const { return coeffs_.context(); }

  // Total degree of the highest nonzero term; -1 for the zero polynomial.
  int Degree() const;
  bool IsZero() const { return coeffs_.IsZero(); }

  // The same polynomial over another index with the same ell. Throws
  // ArgumentError if a nonzero term does not fit.
  Polynomial Reindexed(IndexPtr target) const;

  // Nonzero (coefficient, exponent) pairs in index order.
  std::vector<std::pair<std::uint64_t, Exponent>> Terms() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.index_->ell() == b.index_->ell() &&
           a.index_->degree_bound() == b.index_->degree_bound() &&
           a.coeffs_ == b.coeffs_;
  }

 private:
  IndexPtr index_;
  FieldVector coeffs_;
};

// Values of every indexed monomial at z: one row of the evaluation matrix.
FieldVector EvalMonomials(const MonomialIndex& index, const FieldVector& z);

FieldElement PolyEval(const Polynomial& f, const FieldVector& z);

// Product over the index of degree f.r + g.r.
Polynomial PolyMul(const Polynomial& f, const Polynomial& g);

// n x N matrix whose row i is EvalMonomials(index, points[i]).
MatrixFq EvaluationMatrix(const MonomialIndex& index,
                          const std::vector<FieldVector>& points);

// Generators of a polynomial ideal I in ell variables.
class IdealSpec {
 public:
  // Throws ArgumentError on an empty list, a zero generator, or mixed ell /
  // field.
  explicit IdealSpec(std::vector<Polynomial> generators);

  const std::vector<Polynomial>& generators() const { return generators_; }
  int ell() const { return generators_.front().index()->ell(); }
  const FieldContext& context() const {
    return generators_.front().context();
  }
  int MaxDegree() const;

 private:
  std::vector<Polynomial> generators_;
};

// A basis (RREF rows over MonomialIndex(ell, r)) of
//   span{ m * g : g a generator, m a monomial, deg(m * g) <= r },
// the computed stand-in for I_{<=r}. Throws ArgumentError if a generator has
// degree > r.
MatrixFq IdealTruncatedBasis(const IdealSpec& ideal, int r);

}  // namespace mvhe

#endif  // MVHE_POLYNOMIAL_H_
